#include "mkit/numeric.hpp"

namespace mkit {

NumPoly::NumPoly(const BivarPoly& p) : NumPoly(to_float(p)) {}

NumPoly::NumPoly(const BasicPoly<cplx>& p)
{
    for (auto& [m, c] : p.terms()) {
        terms_.push_back({m.i, m.j, c});
        max_i_ = std::max(max_i_, m.i);
        max_j_ = std::max(max_j_, m.j);
    }
    degree_ = p.degree();
}

namespace {

template <std::size_t N>
struct PowerTable {
    std::array<cplx, N> small;
    std::vector<cplx> big;
    cplx* data;
    PowerTable(cplx v, int n)
    {
        data = (n + 1 <= static_cast<int>(N)) ? small.data() : (big.resize(n + 1), big.data());
        data[0] = 1.0;
        for (int k = 1; k <= n; ++k)
            data[k] = data[k - 1] * v;
    }
};

}  // namespace

cplx NumPoly::operator()(const Point& z) const
{
    PowerTable<24> px(z.x, max_i_), py(z.y, max_j_);
    cplx s = 0.0;
    for (const auto& t : terms_)
        s += t.c * px.data[t.i] * py.data[t.j];
    return s;
}

void NumPoly::eval_grad(const Point& z, cplx& value, cplx& gx, cplx& gy) const
{
    PowerTable<24> px(z.x, max_i_), py(z.y, max_j_);
    value = gx = gy = 0.0;
    for (const auto& t : terms_) {
        value += t.c * px.data[t.i] * py.data[t.j];
        if (t.i > 0)
            gx += t.c * static_cast<double>(t.i) * px.data[t.i - 1] * py.data[t.j];
        if (t.j > 0)
            gy += t.c * static_cast<double>(t.j) * px.data[t.i] * py.data[t.j - 1];
    }
}

double NumPoly::abs_sum(const Point& z) const
{
    PowerTable<24> px(cplx(std::abs(z.x)), max_i_), py(cplx(std::abs(z.y)), max_j_);
    double s = 0.0;
    for (const auto& t : terms_)
        s += std::abs(t.c) * px.data[t.i].real() * py.data[t.j].real();
    return s;
}

double NumPoly::coeff_norm() const
{
    double s = 0.0;
    for (const auto& t : terms_)
        s += std::abs(t.c);
    return s;
}

}  // namespace mkit
