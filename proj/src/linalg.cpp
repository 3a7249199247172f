#include "natred/linalg.hpp"

namespace natred {

BilinearForm::BilinearForm(Matrix gram) : gram_(std::move(gram)) {
    require(gram_.rows() == gram_.cols(), ErrorKind::ShapeMismatch, "Gram matrix must be square");
    require(gram_ == gram_.transpose(), ErrorKind::ShapeMismatch, "Gram matrix must be symmetric");
    positive_definite_ = true;
    for (size_t k = 1; k <= gram_.rows(); ++k) {
        if (sgn(determinant(gram_.block(0, 0, k, k))) <= 0) {
            positive_definite_ = false;
            break;
        }
    }
}

bool BilinearForm::is_nondegenerate() const { return !is_zero(determinant(gram_)); }

BilinearForm::Inertia BilinearForm::inertia() const {
    // Real symmetric matrices have real-rooted characteristic polynomials, for which
    // Descartes' rule of signs is exact.
    Poly p = characteristic_polynomial(gram_);
    Inertia in;
    size_t low = 0;
    while (low < p.coeffs().size() && is_zero(p.coeffs()[low])) ++low;
    in.zero = low;
    in.positive = static_cast<size_t>(p.sign_changes());
    std::vector<Rational> neg = p.coeffs();
    for (size_t i = 1; i < neg.size(); i += 2) neg[i] = -neg[i];
    in.negative = static_cast<size_t>(Poly(neg).sign_changes());
    return in;
}

// Faddeev-LeVerrier; monic of degree n.
Poly characteristic_polynomial(const Matrix& a) {
    size_t n = a.rows();
    require(n == a.cols(), ErrorKind::ShapeMismatch, "characteristic polynomial of non-square matrix");
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    Matrix M(n, n);
    for (size_t k = 1; k <= n; ++k) {
        Matrix AM = a * M;
        for (size_t i = 0; i < n; ++i) AM(i, i) += c[n - k + 1];
        M = AM;
        Rational t = trace_product(a, M);
        c[n - k] = -t / Rational(static_cast<long>(k));
    }
    return Poly(c);
}

Matrix eval_poly(const Poly& p, const Matrix& a) {
    size_t n = a.rows();
    Matrix acc(n, n);
    const auto& c = p.coeffs();
    for (size_t i = c.size(); i-- > 0;) {
        acc = acc * a;
        for (size_t d = 0; d < n; ++d) acc(d, d) += c[i];
    }
    return acc;
}

// First linear dependency among I, A, A^2, ... (flattened).
Poly minimal_polynomial(const Matrix& a) {
    size_t n = a.rows();
    std::vector<Vector> powers;
    Matrix P = Matrix::identity(n);
    for (size_t k = 0; k <= n; ++k) {
        powers.push_back(P.flatten());
        Matrix cols = Matrix::from_cols(powers, n * n);
        auto ker = kernel(cols);
        if (ker.dim() > 0) {
            Vector v = ker.vector(0);
            return Poly(v).monic();
        }
        P = P * a;
    }
    throw Error(ErrorKind::Internal, "minimal polynomial search exceeded degree bound");
}

AffineSolution solve_linear_subject_to(size_t nvars, const std::vector<LinearConstraint>& constraints) {
    size_t rows = 0;
    for (const auto& c : constraints) {
        require(c.A.cols() == nvars && c.A.rows() == c.rhs.size(), ErrorKind::ShapeMismatch,
                "constraint shape mismatch");
        rows += c.A.rows();
    }
    Matrix A(rows, nvars);
    Vector b(rows);
    size_t r = 0;
    for (const auto& c : constraints) {
        A.set_block(r, 0, c.A);
        for (size_t i = 0; i < c.rhs.size(); ++i) b[r + i] = c.rhs[i];
        r += c.A.rows();
    }
    auto x = solve(A, b);
    if (!x) throw Error(ErrorKind::Inconsistent, "linear system has no solution");
    return AffineSolution{*x, kernel(A)};
}

}  // namespace natred
