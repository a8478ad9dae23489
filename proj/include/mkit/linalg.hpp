#pragma once

#include "mkit/scalar.hpp"

#include <map>
#include <vector>

namespace mkit {

/// Sparse linear system A x = b over Q(i); rows are (column -> value).
struct LinearSystem {
    std::size_t columns = 0;
    std::vector<std::map<std::size_t, Scalar>> rows;
    std::vector<Scalar> rhs;

    std::size_t add_row(std::map<std::size_t, Scalar> row, Scalar b)
    {
        rows.push_back(std::move(row));
        rhs.push_back(std::move(b));
        return rows.size() - 1;
    }
};

struct ExactSolution {
    bool feasible = false;
    std::vector<Scalar> x;          // particular solution, free variables set to 0
    std::vector<std::size_t> free;  // indices of free columns
    std::size_t rank = 0;
    /// When infeasible: y with y^T A = 0 and y^T b = 1 (row index -> weight).
    std::map<std::size_t, Scalar> cokernel;
};

/// Gauss-Jordan elimination in exact arithmetic.
ExactSolution solve_exact(const LinearSystem& sys);

/// Relative residual min ||A x - b|| / ||b|| of the floating-point least-squares relaxation.
double least_squares_residual(const LinearSystem& sys);

}  // namespace mkit
