#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tangency/curve.hpp"

namespace tangency {

/// A generated arrangement and what the generator knows about it.
struct Family {
  std::string name;
  std::vector<PlaneCurve> curves;
  /// Coaxial pencils: (lambda index, mu index) cross pairs with no common
  /// base-field point.
  std::vector<std::pair<int, int>> non_intersecting;
  /// Incidence construction: point-line incidences of the base configuration.
  std::int64_t base_incidences = 0;
  std::string note;
};

/// The p^2 circles (x - a)^2 + (y - b)^2 - 1 over F_p, p odd, ordered by
/// (a, b).
Family gen_unit_circles_fp(std::uint64_t p);

/// n of those circles with distinct centers drawn from the seed, in draw
/// order. Needs n <= p^2.
Family gen_unit_circles_subset(std::uint64_t p, int n, std::uint64_t seed = 0);

/// y - a_i x^2 - b_i over a characteristic-2 field, with a_i the nonzero
/// elements in raw order and b_i drawn from the seed. Needs n < q.
Family gen_char2_parabolas(const Field& f, int n, std::uint64_t seed = 0);

/// y = i and x = j for i, j = 1 .. n/2. Throws PreconditionError for odd n
/// or when 1 .. n/2 are not distinct field elements.
Family gen_orthogonal_grid(int n, const Field& f = Field::rational());

/// m circles x^2 + y^2 - 2 lambda_i x - 1 and m circles
/// x^2 + y^2 - 2 mu_j y + 1. Every cross pair is orthogonal wherever it
/// meets. Parameters are picked so every cross pair meets over the base
/// field; pairs found to miss anyway are listed. Throws PreconditionError
/// when the field has too few admissible parameters.
Family gen_coaxial_pencils(int m, const Field& f);

/// A line a x + b y = t with (a, b, c) a Pythagorean triple, a^2 + b^2 = c^2.
struct PythagoreanLine {
  std::int64_t a, b, c, t;
};

/// Unit circles centered at `points` and each line moved one unit along its
/// normal (a, b) / c. Every point-line incidence becomes a circle-line
/// tangency.
Family tangency_from_incidences(const std::vector<std::pair<std::int64_t, std::int64_t>>& points,
                                const std::vector<PythagoreanLine>& lines);

/// n = 2 k^2 unit circles centered on the k x 2k grid scaled by 3, and the
/// n richest lines through the grid among the axis and Pythagorean
/// directions with hypotenuse <= 25, moved as in tangency_from_incidences.
/// Returns 2n curves over Q.
Family gen_incidence_tangency(int n);

}  // namespace tangency
