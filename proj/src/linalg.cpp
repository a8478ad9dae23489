#include "mkit/linalg.hpp"

#include <Eigen/Dense>

namespace mkit {

namespace {

using SparseRow = std::map<std::size_t, Scalar>;

void axpy(SparseRow& target, const Scalar& f, const SparseRow& src)
{
    for (auto& [k, v] : src) {
        auto [it, inserted] = target.emplace(k, Scalar(0));
        it->second -= f * v;
        if (it->second.is_zero())
            target.erase(it);
    }
}

}  // namespace

ExactSolution solve_exact(const LinearSystem& sys)
{
    const std::size_t m = sys.rows.size(), n = sys.columns;
    std::vector<SparseRow> rows = sys.rows;
    std::vector<Scalar> rhs = sys.rhs;
    std::vector<SparseRow> combo(m);
    for (std::size_t r = 0; r < m; ++r)
        combo[r].emplace(r, Scalar(1));

    std::vector<long> pivot_row_of_col(n, -1);
    std::vector<bool> used(m, false);
    ExactSolution out;
    for (std::size_t col = 0; col < n; ++col) {
        // sparsest available row holding this column
        long best = -1;
        for (std::size_t r = 0; r < m; ++r) {
            if (used[r])
                continue;
            auto it = rows[r].find(col);
            if (it == rows[r].end())
                continue;
            if (best < 0 || rows[r].size() < rows[best].size())
                best = static_cast<long>(r);
        }
        if (best < 0)
            continue;
        used[best] = true;
        pivot_row_of_col[col] = best;
        ++out.rank;
        Scalar inv = Scalar(1) / rows[best].at(col);
        for (auto& [k, v] : rows[best])
            v *= inv;
        rhs[best] *= inv;
        for (auto& [k, v] : combo[best])
            v *= inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == static_cast<std::size_t>(best))
                continue;
            auto it = rows[r].find(col);
            if (it == rows[r].end())
                continue;
            Scalar f = it->second;
            axpy(rows[r], f, rows[best]);
            rhs[r] -= f * rhs[best];
            axpy(combo[r], f, combo[best]);
        }
    }
    for (std::size_t r = 0; r < m; ++r) {
        if (!used[r] && rows[r].empty() && !rhs[r].is_zero()) {
            out.feasible = false;
            Scalar inv = Scalar(1) / rhs[r];
            for (auto& [k, v] : combo[r])
                out.cokernel.emplace(k, v * inv);
            return out;
        }
    }
    out.feasible = true;
    out.x.assign(n, Scalar(0));
    for (std::size_t col = 0; col < n; ++col) {
        if (pivot_row_of_col[col] < 0)
            out.free.push_back(col);
        else
            out.x[col] = rhs[pivot_row_of_col[col]];
    }
    return out;
}

double least_squares_residual(const LinearSystem& sys)
{
    const std::size_t m = sys.rows.size(), n = sys.columns;
    if (m == 0)
        return 0.0;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(m, n);
    Eigen::VectorXcd b(m);
    for (std::size_t r = 0; r < m; ++r) {
        for (auto& [k, v] : sys.rows[r])
            A(r, k) = v.to_complex();
        b(r) = sys.rhs[r].to_complex();
    }
    double bn = b.norm();
    if (bn == 0.0)
        return 0.0;
    if (n == 0)
        return 1.0;
    Eigen::VectorXcd x = A.completeOrthogonalDecomposition().solve(b);
    return (A * x - b).norm() / bn;
}

}  // namespace mkit
