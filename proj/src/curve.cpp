#include "tangency/curve.hpp"

#include <random>

#include "tangency/gcd.hpp"

namespace tangency {

namespace {

constexpr int kNormalizeAttempts = 32;
constexpr std::uint64_t kFactorSearchBudget = 200000;

bool has_linear_factor_fq(const BivarPoly& p) {
  const Field& f = p.field();
  const std::vector<Scalar> elems = field_elements(f);
  const Scalar zero = Scalar::zero(f), one = Scalar::one(f);
  const int d = p.degree();
  const bool evaluate = elems.size() > static_cast<std::size_t>(d);
  auto vanishes_on = [&](const Scalar& a, const Scalar& b, const Scalar& c) {
    // Line a x + b y + c = 0 parametrized by t: (-(b t + c), t) when a = 1,
    // (t, -c) when (a, b) = (0, 1).
    const bool vertical_param = a.is_zero();
    if (evaluate) {
      for (int k = 0; k <= d; ++k) {
        const Scalar& t = elems[k];
        const Point2 pt = vertical_param ? Point2{t, -c} : Point2{-(b * t + c), t};
        if (!p.eval(pt.arr()).is_zero()) return false;
      }
      return true;
    }
    const BivarPoly r = vertical_param ? substitute_linear(p, {one, zero, zero, zero, zero, -c})
                                       : substitute_linear(p, {zero, -b, -c, zero, one, zero});
    return r.is_zero();
  };
  for (const auto& c : elems) {
    if (vanishes_on(zero, one, c)) return true;
    for (const auto& b : elems) {
      if (vanishes_on(one, b, c)) return true;
    }
  }
  return false;
}

// Quadratic factors over a small field: every degree-2 polynomial whose first
// nonzero coefficient (grlex) is 1.
bool has_quadratic_factor_fq(const BivarPoly& p) {
  const Field& f = p.field();
  const std::vector<Scalar> elems = field_elements(f);
  const std::array<std::array<int, 2>, 6> monos = {{{2, 0}, {1, 1}, {0, 2}, {1, 0}, {0, 1}, {0, 0}}};
  const std::uint64_t q = elems.size();
  for (int lead = 0; lead < 3; ++lead) {
    std::uint64_t count = 1;
    for (int k = lead + 1; k < 6; ++k) count *= q;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      BivarPoly cand = BivarPoly::monomial(monos[lead], Scalar::one(f));
      std::uint64_t rest = idx;
      for (int k = lead + 1; k < 6; ++k) {
        cand.add_term(monos[k], elems[rest % q]);
        rest /= q;
      }
      if (try_divide(p, cand)) return true;
    }
  }
  return false;
}

Scalar conic_discriminant(const BivarPoly& p) {
  const Field& f = p.field();
  const Scalar two = Scalar::from_int(f, 2);
  const Scalar a = p.coeff({2, 0}), b = p.coeff({1, 1}), c = p.coeff({0, 2});
  const Scalar d = p.coeff({1, 0}), e = p.coeff({0, 1}), g = p.coeff({0, 0});
  const Scalar m00 = two * a, m11 = two * c, m22 = two * g;
  return m00 * (m11 * m22 - e * e) - b * (b * m22 - e * d) + d * (b * e - m11 * d);
}

}  // namespace

TangentDirection::TangentDirection(const Scalar& u, const Scalar& v) : u_(u), v_(v) {
  if (u.is_zero() && v.is_zero()) throw PreconditionError("direction (0 : 0)");
  if (!u.is_zero()) {
    v_ = v / u;
    u_ = Scalar::one(u.field());
  } else {
    v_ = Scalar::one(v.field());
  }
}

std::string to_string(Attestation a) {
  switch (a) {
    case Attestation::Verified: return "verified";
    case Attestation::AssertedByFamily: return "asserted-by-family";
    case Attestation::Asserted: return "asserted";
  }
  return "?";
}

PlaneCurve::PlaneCurve(BivarPoly p, Attestation attestation)
    : p_(std::move(p)), px_(p_.partial(0)), py_(p_.partial(1)), attestation_(attestation) {
  if (p_.degree() < 1) throw PreconditionError("a plane curve needs a polynomial of positive degree");
  if (p_.degree() > 1 && !(px_.is_zero() && py_.is_zero())) {
    const BivarPoly grad_gcd = px_.is_zero() ? py_ : py_.is_zero() ? px_ : poly_gcd(px_, py_);
    if (poly_gcd(p_, grad_gcd).degree() > 0) {
      throw PreconditionError("polynomial is not square-free: " + format_poly(p_));
    }
  }
}

PlaneCurve PlaneCurve::from_user(BivarPoly p) {
  const Field& f = p.field();
  const int d = p.degree();
  auto reducible = [&]() -> PlaneCurve { throw PreconditionError("curve is reducible: " + format_poly(p)); };
  if (d == 1) return PlaneCurve(std::move(p), Attestation::Verified);
  if (d == 2 && f.characteristic() != 2) {
    if (conic_discriminant(p).is_zero()) return reducible();
    return PlaneCurve(std::move(p), Attestation::Verified);
  }
  if (f.is_finite() && d <= 4) {
    const std::uint64_t q = f.size();
    if ((q * q + q) * static_cast<std::uint64_t>(d + 1) <= 50 * kFactorSearchBudget) {
      if (has_linear_factor_fq(p)) return reducible();
      bool complete = d <= 3;
      if (d == 4 && q * q * q * q * q <= kFactorSearchBudget) {
        if (has_quadratic_factor_fq(p)) return reducible();
        complete = true;
      }
      if (complete) return PlaneCurve(std::move(p), Attestation::Verified);
    }
  }
  PlaneCurve c(std::move(p), Attestation::Asserted);
  c.warning_ = "irreducibility not verified for " + format_poly(c.p_);
  return c;
}

AffineMap::AffineMap(std::array<Scalar, 4> m, std::array<Scalar, 2> t) : m_(std::move(m)), t_(std::move(t)) {
  if ((m_[0] * m_[3] - m_[1] * m_[2]).is_zero()) throw PreconditionError("singular affine map");
}

AffineMap AffineMap::identity(const Field& f) {
  const Scalar o = Scalar::one(f), z = Scalar::zero(f);
  return AffineMap({o, z, z, o}, {z, z});
}

Point2 AffineMap::apply(const Point2& p) const {
  return {m_[0] * p.x + m_[1] * p.y + t_[0], m_[2] * p.x + m_[3] * p.y + t_[1]};
}

AffineMap AffineMap::inverse() const {
  const Scalar inv_det = (m_[0] * m_[3] - m_[1] * m_[2]).inv();
  const std::array<Scalar, 4> n = {m_[3] * inv_det, -m_[1] * inv_det, -m_[2] * inv_det, m_[0] * inv_det};
  const std::array<Scalar, 2> s = {-(n[0] * t_[0] + n[1] * t_[1]), -(n[2] * t_[0] + n[3] * t_[1])};
  return AffineMap(n, s);
}

BivarPoly AffineMap::push_forward(const BivarPoly& p) const {
  const AffineMap inv = inverse();
  const auto& n = inv.m_;
  const auto& s = inv.t_;
  return substitute_linear(p, {n[0], n[1], s[0], n[2], n[3], s[1]});
}

bool AffineMap::is_identity() const {
  return m_[0].is_one() && m_[1].is_zero() && m_[2].is_zero() && m_[3].is_one() && t_[0].is_zero() && t_[1].is_zero();
}

bool is_smooth_at(const PlaneCurve& c, const Point2& p) {
  if (!c.contains(p)) throw PreconditionError("point " + p.to_string() + " is not on the curve");
  return !(c.px().eval(p.arr()).is_zero() && c.py().eval(p.arr()).is_zero());
}

TangentDirection tangent_direction_at(const PlaneCurve& c, const Point2& p) {
  if (!is_smooth_at(c, p)) throw SingularPointError("singular point " + p.to_string());
  return TangentDirection(c.py().eval(p.arr()), -c.px().eval(p.arr()));
}

NormalizedArrangement x_monic_normalize(const std::vector<PlaneCurve>& curves, std::uint64_t seed) {
  if (curves.empty()) throw PreconditionError("x_monic_normalize needs at least one curve");
  const Field& f = curves.front().field();
  for (const auto& c : curves) {
    if (!(c.field() == f)) throw FieldMismatch("arrangement mixes fields");
    if (f.is_finite() && static_cast<std::uint64_t>(c.degree()) >= f.characteristic()) {
      throw CharacteristicObstruction("degree " + std::to_string(c.degree()) + " is not below the characteristic " +
                                      std::to_string(f.characteristic()));
    }
  }
  std::mt19937_64 rng(seed);
  auto draw = [&]() {
    if (f.is_finite()) return Scalar::from_raw(f, rng() % f.size());
    return Scalar::from_int(f, static_cast<std::int64_t>(rng() % 17) - 8);
  };
  const Scalar one = Scalar::one(f), zero = Scalar::zero(f);
  for (int attempt = 0; attempt < kNormalizeAttempts; ++attempt) {
    Scalar t = zero, u = zero;
    if (attempt > 0) {
      t = draw();
      u = draw();
    }
    // Substitution S = [[1, t], [u, 1 + t u]]; the point map is S^-1.
    const std::array<Scalar, 6> sub = {one, t, zero, u, one + t * u, zero};
    std::vector<PlaneCurve> out;
    out.reserve(curves.size());
    bool ok = true;
    for (const auto& c : curves) {
      BivarPoly q = substitute_linear(c.poly(), sub);
      const Scalar lead = q.coeff({q.degree(), 0});
      if (lead.is_zero()) {
        ok = false;
        break;
      }
      q = q.scaled(lead.inv());
      if (q.partial(1).is_zero()) {
        ok = false;
        break;
      }
      out.emplace_back(std::move(q), c.attestation());
    }
    if (!ok) continue;
    AffineMap map({one + t * u, -t, -u, one}, {zero, zero});
    return {std::move(map), std::move(out), attempt + 1};
  }
  throw RetryBudgetExhausted("no admissible normalizing map after " + std::to_string(kNormalizeAttempts) + " attempts");
}

std::vector<Scalar> field_elements(const Field& f) {
  if (!f.is_finite()) throw PreconditionError("cannot enumerate an infinite field");
  std::vector<Scalar> r;
  r.reserve(f.size());
  for (std::uint64_t w = 0; w < f.size(); ++w) r.push_back(Scalar::from_raw(f, w));
  return r;
}

std::vector<Point2> curve_points_Fp(const PlaneCurve& c, std::uint64_t scan_bound) {
  const Field& f = c.field();
  if (!f.is_finite()) throw PreconditionError("curve_points_Fp needs a finite field");
  if (f.size() > scan_bound) {
    throw ScanBoundExceeded(f.name() + " exceeds the scan bound " + std::to_string(scan_bound));
  }
  const std::vector<Scalar> elems = field_elements(f);
  std::vector<Point2> pts;
  for (const auto& x : elems) {
    const UniPoly slice = specialize(c.poly(), 0, x);
    for (const auto& y : elems) {
      if (slice.eval(y).is_zero()) pts.push_back({x, y});
    }
  }
  return pts;
}

}  // namespace tangency
