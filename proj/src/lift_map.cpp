#include "rotset/lift_map.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace rotset {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw MapSpecError(std::string(what) + ": parameter is not finite");
}

}  // namespace

LiftMap::LiftMap() : root_(std::make_shared<const Node>(node::Translate{Vec2::Zero()})) {}

LiftMap LiftMap::from_node(Node&& n) { return LiftMap(std::make_shared<const Node>(std::move(n))); }

Vec2 LiftMap::evaluate(const Vec2& x) const {
  return std::visit(
      overloaded{
          [&](const node::Translate& t) -> Vec2 { return x + t.v; },
          [&](const node::HShear& s) -> Vec2 {
            return {x.x() + s.beta + s.alpha * std::sin(kTwoPi * x.y()), x.y()};
          },
          [&](const node::VShear& s) -> Vec2 {
            return {x.x(), x.y() + s.delta + s.gamma * std::sin(kTwoPi * x.x())};
          },
          [&](const node::Compose& c) -> Vec2 { return c.outer.evaluate(c.inner.evaluate(x)); },
          [&](const node::Power& p) -> Vec2 {
            Vec2 y = x;
            for (int i = 0; i < p.q; ++i) y = p.base.evaluate(y);
            return y;
          },
          [&](const node::Shift& s) -> Vec2 { return s.base.evaluate(x) + to_real(s.offset); },
      },
      *root_);
}

Vec2 LiftMap::displacement(const Vec2& x) const { return step(x).second; }

std::pair<Vec2, Vec2> LiftMap::step(const Vec2& x) const {
  return std::visit(
      overloaded{
          [&](const node::Translate& t) -> std::pair<Vec2, Vec2> { return {x + t.v, t.v}; },
          [&](const node::HShear& s) -> std::pair<Vec2, Vec2> {
            const Vec2 d(s.beta + s.alpha * std::sin(kTwoPi * x.y()), 0.0);
            return {x + d, d};
          },
          [&](const node::VShear& s) -> std::pair<Vec2, Vec2> {
            const Vec2 d(0.0, s.delta + s.gamma * std::sin(kTwoPi * x.x()));
            return {x + d, d};
          },
          [&](const node::Compose& c) -> std::pair<Vec2, Vec2> {
            const auto [y, d_in] = c.inner.step(x);
            const auto [z, d_out] = c.outer.step(y);
            return {z, d_in + d_out};
          },
          [&](const node::Power& p) -> std::pair<Vec2, Vec2> {
            Vec2 y = x;
            Vec2 d = Vec2::Zero();
            for (int i = 0; i < p.q; ++i) {
              const auto [yn, di] = p.base.step(y);
              y = yn;
              d += di;
            }
            return {y, d};
          },
          [&](const node::Shift& s) -> std::pair<Vec2, Vec2> {
            const auto [y, d] = s.base.step(x);
            return {y + to_real(s.offset), d + to_real(s.offset)};
          },
      },
      *root_);
}

std::string LiftMap::spec() const {
  return std::visit(
      overloaded{
          [](const node::Translate& t) {
            return "translate(" + format_real(t.v.x()) + "," + format_real(t.v.y()) + ")";
          },
          [](const node::HShear& s) {
            return "hshear(" + format_real(s.alpha) + "," + format_real(s.beta) + ")";
          },
          [](const node::VShear& s) {
            return "vshear(" + format_real(s.gamma) + "," + format_real(s.delta) + ")";
          },
          [](const node::Compose& c) {
            return "compose(" + c.outer.spec() + "," + c.inner.spec() + ")";
          },
          [](const node::Power& p) { return "pow(" + p.base.spec() + "," + std::to_string(p.q) + ")"; },
          [](const node::Shift& s) {
            return "shift(" + s.base.spec() + "," + std::to_string(s.offset.x()) + "," +
                   std::to_string(s.offset.y()) + ")";
          },
      },
      *root_);
}

LiftMap identity_map() { return LiftMap(); }

LiftMap translate(const Vec2& v) {
  require_finite(v.x(), "translate");
  require_finite(v.y(), "translate");
  return LiftMap::from_node(node::Translate{v});
}

LiftMap hshear(double alpha, double beta) {
  require_finite(alpha, "hshear");
  require_finite(beta, "hshear");
  return LiftMap::from_node(node::HShear{alpha, beta});
}

LiftMap vshear(double gamma, double delta) {
  require_finite(gamma, "vshear");
  require_finite(delta, "vshear");
  return LiftMap::from_node(node::VShear{gamma, delta});
}

LiftMap compose(const LiftMap& outer, const LiftMap& inner) {
  return LiftMap::from_node(node::Compose{outer, inner});
}

LiftMap power(const LiftMap& f, int q) {
  if (q < 1) throw MapSpecError("pow: exponent must be >= 1, got " + std::to_string(q));
  if (q == 1) return f;
  return LiftMap::from_node(node::Power{f, q});
}

LiftMap shift(const LiftMap& f, const LatticeVec& offset) {
  if (offset.isZero()) return f;
  return LiftMap::from_node(node::Shift{f, offset});
}

LiftMap power_shift(const LiftMap& f, int q, const LatticeVec& w) {
  if (q < 1) throw std::invalid_argument("power_shift: q must be >= 1");
  return shift(power(f, q), -w);
}

Vec2 iterate(const LiftMap& f, const Vec2& x, long n) {
  Vec2 y = x;
  for (long i = 0; i < n; ++i) y = f.evaluate(y);
  return y;
}

// Recursive-descent parser for the map mini-language.
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) src_.push_back(c);
  }

  LiftMap parse() {
    LiftMap m = expr();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return m;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "map spec: " << msg << " at offset " << pos_ << " in '" << src_ << "'";
    throw MapSpecError(os.str());
  }

  void expect(char c) {
    if (pos_ >= src_.size() || src_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a map name");
    return src_.substr(start, pos_ - start);
  }

  double real() {
    double v = 0.0;
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
    if (ec != std::errc() || !std::isfinite(v)) fail("expected a decimal literal");
    pos_ = static_cast<std::size_t>(ptr - src_.data());
    return v;
  }

  long long integer() {
    long long v = 0;
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc()) fail("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - src_.data());
    return v;
  }

  LiftMap expr() {
    const std::string name = ident();
    if (name == "identity" || name == "id") return identity_map();
    expect('(');
    LiftMap out;
    if (name == "translate") {
      double a = real();
      expect(',');
      double b = real();
      out = translate({a, b});
    } else if (name == "hshear") {
      double a = real();
      expect(',');
      double b = real();
      out = hshear(a, b);
    } else if (name == "vshear") {
      double a = real();
      expect(',');
      double b = real();
      out = vshear(a, b);
    } else if (name == "compose") {
      LiftMap a = expr();
      expect(',');
      LiftMap b = expr();
      out = compose(a, b);
    } else if (name == "pow") {
      LiftMap a = expr();
      expect(',');
      long long q = integer();
      if (q < 1 || q > 1'000'000) fail("pow exponent out of range [1, 1e6]");
      out = power(a, static_cast<int>(q));
    } else if (name == "shift") {
      LiftMap a = expr();
      expect(',');
      long long m = integer();
      expect(',');
      long long n = integer();
      out = shift(a, LatticeVec(m, n));
    } else {
      fail("unknown map '" + name + "'");
    }
    expect(')');
    return out;
  }

  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace

LiftMap parse_map(std::string_view text) { return Parser(text).parse(); }

}  // namespace rotset
