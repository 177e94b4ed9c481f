#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dgpd/double_groupoid.hpp"
#include "dgpd/groupoid.hpp"

namespace dgpd::samples {

/// Z/a × Z/b with labels "x.y".
Groupoid product_cyclic(std::size_t a, std::size_t b);
/// Dihedral group of order 2n: r^i s^f labelled "r<i>" / "s<i>".
Groupoid dihedral(std::size_t n);
/// One of: Z/n (n ≤ 6), Z/2×Z/m, S3, Q8, dihedral of order ≤ 8.
Groupoid random_group(std::mt19937_64& rng);

/// Renames every id through a random injective map and shuffles table rows,
/// so index order carries no structural information.
DoubleGroupoid relabel(const DoubleGroupoid& dg, std::mt19937_64& rng);

/// A valid double groupoid from one of the families from_group,
/// central_action, action_hom (Z/m acting on Z/n), diagonal, coarse.
DoubleGroupoid random_valid_double(std::mt19937_64& rng, std::string* family = nullptr);

/// Named double groupoids: from-group-z2, from-group-z3, z2-in-z4,
/// q8-center, s3-a3 (non-central, invalid), strict-2group (Z/4 acting on
/// Z/2 by reduction), diagonal-z3, coarse-2. Throws UnknownIdError.
DoubleGroupoid double_fixture(std::string_view name);
std::vector<std::string> double_fixture_names();

}  // namespace dgpd::samples
