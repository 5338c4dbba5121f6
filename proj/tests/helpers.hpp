// helpers.hpp: shared test utilities

#pragma once

#include <random>

#include "doctest.h"

#include "srotto/errors.hpp"
#include "srotto/hilbert.hpp"

namespace srotto::test {

inline double max_abs(const Matrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Random full-rank density matrix from G G† / Tr(G G†).
inline Matrix random_density(Index dim, std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix g(dim, dim);
    for (Index r = 0; r < dim; ++r) {
        for (Index c = 0; c < dim; ++c) {
            g(r, c) = cplx{n(rng), n(rng)};
        }
    }
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

inline Matrix projector(Index dim, Index k)
{
    Matrix p = Matrix::Zero(dim, dim);
    p(k, k) = 1.0;
    return p;
}

// Kind of the srotto::Error thrown by fn; fails the test when nothing is thrown.
inline ErrorKind kind_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::InvalidArgument;
}

inline double mean_photon(const Matrix& rho_field)
{
    double n = 0.0;
    for (Index k = 0; k < rho_field.rows(); ++k) {
        n += static_cast<double>(k) * rho_field(k, k).real();
    }
    return n;
}

} // namespace srotto::test
