#include "tangency/poly.hpp"

#include <cctype>
#include <sstream>

namespace tangency {

namespace {

constexpr char kVarNames[3] = {'x', 'y', 'z'};

class PolyParser {
 public:
  PolyParser(const std::string& text, const Field& field) : s_(text), field_(field) {}

  template <std::size_t N>
  Poly<N> parse() {
    Poly<N> result(field_);
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial text");
    bool first = true;
    while (!at_end()) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      auto [e, c] = parse_term<N>();
      result.add_term(e, negative ? -c : c);
      first = false;
      skip_ws();
    }
    return result;
  }

 private:
  template <std::size_t N>
  std::pair<std::array<int, N>, Scalar> parse_term() {
    std::array<int, N> e{};
    Scalar c = Scalar::one(field_);
    bool any = false;
    while (true) {
      skip_ws();
      if (at_end()) break;
      const char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        c *= parse_number();
      } else if (ch == '[') {
        c *= parse_bracket();
      } else if (std::isalpha(static_cast<unsigned char>(ch))) {
        std::size_t var = N;
        for (std::size_t i = 0; i < N; ++i) {
          if (ch == kVarNames[i]) var = i;
        }
        if (var == N) fail(std::string("unknown variable '") + ch + "'");
        ++pos_;
        skip_ws();
        int exp = 1;
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          exp = static_cast<int>(parse_uint());
        }
        e[var] += exp;
      } else {
        fail("unexpected character");
      }
      any = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    return {e, c};
  }

  Scalar parse_number() {
    const std::string num = digits();
    skip_ws();
    std::string den = "1";
    if (!at_end() && peek() == '/') {
      ++pos_;
      skip_ws();
      den = digits();
    }
    if (field_.is_rational()) {
      mpq_class q{mpz_class(num), mpz_class(den)};
      if (q.get_den() == 0) fail("zero denominator");
      q.canonicalize();
      return Scalar::from_rational(q);
    }
    return reduce(num) / reduce(den);
  }

  Scalar reduce(const std::string& digits) const {
    mpz_class v(digits);
    mpz_class m(std::to_string(field_.characteristic()));
    mpz_class r = v % m;
    return Scalar::from_int(field_, r.get_si());
  }

  Scalar parse_bracket() {
    ++pos_;
    skip_ws();
    const std::uint64_t w = parse_uint();
    skip_ws();
    if (at_end() || peek() != ']') fail("expected ']'");
    ++pos_;
    if (field_.kind() != FieldKind::Char2Ext) fail("bracketed elements are only valid in GF(2^k)");
    if (w >= field_.size()) fail("bracketed element outside the field");
    return Scalar::from_raw(field_, w);
  }

  std::uint64_t parse_uint() {
    const std::string d = digits();
    return std::stoull(d);
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return s_.substr(start, pos_ - start);
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what + " in \"" + s_ + "\"");
  }

  const std::string& s_;
  Field field_;
  std::size_t pos_ = 0;
};

}  // namespace

template <std::size_t N>
Poly<N> parse_poly(const std::string& text, const Field& field) {
  return PolyParser(text, field).parse<N>();
}

template <std::size_t N>
std::string format_poly(const Poly<N>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = c.is_negative();
    const Scalar mag = negative ? -c : c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool constant = true;
    for (int v : e) constant = constant && v == 0;
    bool need_star = false;
    if (!mag.is_one() || constant) {
      out << mag.to_string();
      need_star = true;
    }
    for (std::size_t i = 0; i < N; ++i) {
      if (e[i] == 0) continue;
      if (need_star) out << "*";
      out << kVarNames[i];
      if (e[i] > 1) out << "^" << e[i];
      need_star = true;
    }
  }
  return out.str();
}

template Poly<2> parse_poly<2>(const std::string&, const Field&);
template Poly<3> parse_poly<3>(const std::string&, const Field&);
template std::string format_poly<2>(const Poly<2>&);
template std::string format_poly<3>(const Poly<3>&);

TrivarPoly to_trivar(const BivarPoly& p) {
  TrivarPoly r(p.field());
  for (const auto& [e, c] : p.terms()) r.add_term({e[0], e[1], 0}, c);
  return r;
}

BivarPoly substitute_linear(const BivarPoly& p, const std::array<Scalar, 6>& k) {
  const Field& f = p.field();
  const BivarPoly x = BivarPoly::variable(f, 0);
  const BivarPoly y = BivarPoly::variable(f, 1);
  const BivarPoly sx = x.scaled(k[0]) + y.scaled(k[1]) + BivarPoly::constant(k[2]);
  const BivarPoly sy = x.scaled(k[3]) + y.scaled(k[4]) + BivarPoly::constant(k[5]);
  const int dx = std::max(p.degree_in(0), 0);
  const int dy = std::max(p.degree_in(1), 0);
  std::vector<BivarPoly> px{BivarPoly::constant(Scalar::one(f))}, py{BivarPoly::constant(Scalar::one(f))};
  for (int i = 1; i <= dx; ++i) px.push_back(px.back() * sx);
  for (int j = 1; j <= dy; ++j) py.push_back(py.back() * sy);
  BivarPoly r(f);
  for (const auto& [e, c] : p.terms()) r += (px[e[0]] * py[e[1]]).scaled(c);
  return r;
}

BivarPoly translate(const BivarPoly& p, const Scalar& dx, const Scalar& dy) {
  const Field& f = p.field();
  const Scalar one = Scalar::one(f), zero = Scalar::zero(f);
  return substitute_linear(p, {one, zero, dx, zero, one, dy});
}

}  // namespace tangency
