#include "gapcorr/linalg.hpp"

#include "gapcorr/errors.hpp"

namespace gapcorr {

namespace {

HPReal magnitude(const HPReal& x) { return abs(x); }
HPReal magnitude(const HPComplex& z) { return abs(z.re) + abs(z.im); }

template <class T>
T lu_det(Matrix<T>& m, const T& one) {
    if (!m.square()) throw DomainError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    T det = one;
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        HPReal best = magnitude(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            HPReal mag = magnitude(m(i, k));
            if (mag > best) {
                best = std::move(mag);
                piv = i;
            }
        }
        if (best.is_zero()) return one - one;
        if (piv != k) {
            m.swap_rows(piv, k);
            negate = !negate;
        }
        const T pivot = m(k, k);
        det *= pivot;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k).is_zero()) continue;
            T f = m(i, k) / pivot;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return negate ? -det : det;
}

} // namespace

HPReal det_hp(HPMatrix m, mpfr_prec_t prec) { return lu_det(m, HPReal(1L, prec)); }

HPComplex det_hp(HPCMatrix m, mpfr_prec_t prec) { return lu_det(m, HPComplex(HPReal(1L, prec))); }

Integer det_bareiss(ZMatrix m) {
    if (!m.square()) throw DomainError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            m.swap_rows(piv, k);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

Rational det_exact(const QMatrix& m) {
    if (!m.square()) throw DomainError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    ZMatrix z(n, n);
    Rational scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j) z(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
        scale *= l;
    }
    Rational d(det_bareiss(std::move(z)));
    d /= scale;
    return d;
}

HPMatrix to_hp(const QMatrix& m, mpfr_prec_t prec) {
    HPMatrix h(m.rows(), m.cols(), HPReal(prec));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) h(i, j) = HPReal(m(i, j), prec);
    return h;
}

} // namespace gapcorr
