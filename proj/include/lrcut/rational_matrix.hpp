#pragma once

#include <optional>
#include <vector>

#include "lrcut/polynomial.hpp"

namespace lrcut {

/// Dense row-major matrix over Q.
using RationalMatrix = std::vector<std::vector<Rational>>;

namespace qmat {

RationalMatrix zeros(std::size_t rows, std::size_t cols);
RationalMatrix identity(std::size_t n);
RationalMatrix transpose(const RationalMatrix& m);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m);
std::size_t rank(RationalMatrix m);
/// Basis of {x : m x = 0} as rows.
RationalMatrix nullspace(const RationalMatrix& m, std::size_t cols);
/// Some solution of m x = b, or nullopt if inconsistent.
std::optional<std::vector<Rational>> solve(const RationalMatrix& m, const std::vector<Rational>& b);
std::optional<RationalMatrix> inverse(const RationalMatrix& m);
Rational determinant(RationalMatrix m);

}  // namespace qmat
}  // namespace lrcut
