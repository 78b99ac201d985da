// Small fixed-size dense linear algebra for the three-qubit problem.
//
// Everything here is sized at compile time (2x2 up to 8x8). Matrices are
// row-major value types; the eigensolvers are cyclic Jacobi.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>

namespace ghzclass {

using cplx = std::complex<double>;

/// Invalid user-facing input (bad parameters, malformed files, wrong shape).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to deliver its contract (e.g. no convergence).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename T>
inline double abs2(const T& x) {
  if constexpr (std::is_same_v<T, cplx>) {
    return std::norm(x);
  } else {
    return x * x;
  }
}

template <typename T>
inline T conj_of(const T& x) {
  if constexpr (std::is_same_v<T, cplx>) {
    return std::conj(x);
  } else {
    return x;
  }
}

template <typename T, std::size_t R, std::size_t C = R>
struct Matrix {
  static constexpr std::size_t rows = R;
  static constexpr std::size_t cols = C;

  std::array<T, R * C> data{};

  constexpr T& operator()(std::size_t r, std::size_t c) { return data[r * C + c]; }
  constexpr const T& operator()(std::size_t r, std::size_t c) const { return data[r * C + c]; }

  static constexpr Matrix zero() { return Matrix{}; }

  static constexpr Matrix identity()
    requires(R == C)
  {
    Matrix m{};
    for (std::size_t i = 0; i < R; ++i) m(i, i) = T{1};
    return m;
  }

  static constexpr Matrix diagonal(const std::array<T, R>& d)
    requires(R == C)
  {
    Matrix m{};
    for (std::size_t i = 0; i < R; ++i) m(i, i) = d[i];
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < data.size(); ++i) data[i] += o.data[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < data.size(); ++i) data[i] -= o.data[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

using Mat3 = Matrix<double, 3>;
template <std::size_t N>
using CMat = Matrix<cplx, N>;
using CMat2 = CMat<2>;
using CMat4 = CMat<4>;
using CMat8 = CMat<8>;

template <typename T, std::size_t R, std::size_t K, std::size_t C>
Matrix<T, R, C> operator*(const Matrix<T, R, K>& a, const Matrix<T, K, C>& b) {
  Matrix<T, R, C> out{};
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t k = 0; k < K; ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      for (std::size_t j = 0; j < C; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <typename T, std::size_t R, std::size_t C>
Matrix<T, C, R> transpose(const Matrix<T, R, C>& m) {
  Matrix<T, C, R> out{};
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) out(j, i) = m(i, j);
  return out;
}

template <typename T, std::size_t R, std::size_t C>
Matrix<T, C, R> adjoint(const Matrix<T, R, C>& m) {
  Matrix<T, C, R> out{};
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) out(j, i) = conj_of(m(i, j));
  return out;
}

template <typename T, std::size_t R, std::size_t C>
Matrix<T, R, C> conjugate(const Matrix<T, R, C>& m) {
  Matrix<T, R, C> out{};
  for (std::size_t i = 0; i < R * C; ++i) out.data[i] = conj_of(m.data[i]);
  return out;
}

template <typename T, std::size_t N>
T trace(const Matrix<T, N, N>& m) {
  T t{};
  for (std::size_t i = 0; i < N; ++i) t += m(i, i);
  return t;
}

/// Tr(a * b) without forming the product.
template <typename T, std::size_t N>
T trace_of_product(const Matrix<T, N, N>& a, const Matrix<T, N, N>& b) {
  T t{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) t += a(i, k) * b(k, i);
  return t;
}

template <typename T, std::size_t R, std::size_t C>
double max_abs_diff(const Matrix<T, R, C>& a, const Matrix<T, R, C>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < R * C; ++i) worst = std::max(worst, std::abs(a.data[i] - b.data[i]));
  return worst;
}

template <typename T, std::size_t R, std::size_t C>
double frobenius_norm(const Matrix<T, R, C>& m) {
  double s = 0.0;
  for (const auto& x : m.data) s += abs2(x);
  return std::sqrt(s);
}

/// Entry-wise |M - M^dagger| maximum.
template <typename T, std::size_t N>
double hermiticity_defect(const Matrix<T, N, N>& m) {
  return max_abs_diff(m, adjoint(m));
}

template <typename T, std::size_t R1, std::size_t C1, std::size_t R2, std::size_t C2>
Matrix<T, R1 * R2, C1 * C2> kron(const Matrix<T, R1, C1>& a, const Matrix<T, R2, C2>& b) {
  Matrix<T, R1 * R2, C1 * C2> out{};
  for (std::size_t i = 0; i < R1; ++i)
    for (std::size_t j = 0; j < C1; ++j)
      for (std::size_t k = 0; k < R2; ++k)
        for (std::size_t l = 0; l < C2; ++l) out(i * R2 + k, j * C2 + l) = a(i, j) * b(k, l);
  return out;
}

template <typename T, std::size_t N>
Matrix<cplx, N> to_complex(const Matrix<T, N>& m) {
  Matrix<cplx, N> out{};
  for (std::size_t i = 0; i < N * N; ++i) out.data[i] = cplx(m.data[i]);
  return out;
}

inline constexpr double kHermitianTolerance = 1e-12;

/// 8x8 complex matrix known to be Hermitian within kHermitianTolerance.
class HermMat8 {
 public:
  HermMat8() = default;

  explicit HermMat8(const CMat8& m, double tol = kHermitianTolerance) : m_(m) {
    const double defect = hermiticity_defect(m);
    if (!(defect <= tol)) {
      throw InputError("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
    }
  }

  const CMat8& matrix() const { return m_; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  friend HermMat8 operator+(const HermMat8& a, const HermMat8& b) { return HermMat8(a.m_ + b.m_, 1e-9); }
  friend HermMat8 operator-(const HermMat8& a, const HermMat8& b) { return HermMat8(a.m_ - b.m_, 1e-9); }
  friend HermMat8 operator*(double s, const HermMat8& a) { return HermMat8(a.m_ * cplx(s), 1e-9); }

 private:
  CMat8 m_{};
};

/// Eigenvalues in ascending order with the matching unit eigenvectors
/// stored as the columns of `vectors`.
template <typename T, std::size_t N>
struct Spectrum {
  std::array<double, N> values{};
  Matrix<T, N> vectors{};

  double min() const { return values.front(); }
  double max() const { return values.back(); }
  double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

  /// V diag(values) V^dagger
  Matrix<T, N> reconstruct() const {
    Matrix<T, N> d{};
    for (std::size_t i = 0; i < N; ++i) d(i, i) = T(values[i]);
    return vectors * d * adjoint(vectors);
  }
};

struct JacobiOptions {
  double off_diagonal_tol = 1e-14;
  int max_sweeps = 100;
};

namespace detail {

template <typename T, std::size_t N>
double off_diagonal_norm(const Matrix<T, N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += abs2(a(i, j));
  return std::sqrt(s);
}

// One cyclic-Jacobi solver covering both real symmetric and complex
// Hermitian input. The (p,q) rotation zeroes a(p,q) using
//   J = [[c, -s e^{i phi}], [s e^{-i phi}, c]],  A <- J^dagger A J,
// where a(p,q) = |a(p,q)| e^{i phi}; for real T phi is 0 or pi.
template <typename T, std::size_t N>
Spectrum<T, N> jacobi(Matrix<T, N> a, const JacobiOptions& opt) {
  Matrix<T, N> v = Matrix<T, N>::identity();
  const double scale = std::max(1.0, frobenius_norm(a));
  int sweep = 0;
  while (off_diagonal_norm(a) > opt.off_diagonal_tol * scale) {
    if (sweep++ >= opt.max_sweeps) {
      throw NumericalError("Jacobi eigensolver did not converge in " + std::to_string(opt.max_sweeps) +
                           " sweeps");
    }
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const T phase = a(p, q) / T(mag);
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        // (J^dagger A J)_pq = e^{i phi} [cs (a_qq - a_pp) + |a_pq| (c^2 - s^2)];
        // t = s/c solves t^2 + 2 tau t - 1 = 0, take the small root.
        const double tau = (app - aqq) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const T sp = T(s) * phase;            // s e^{i phi}
        const T sm = T(s) * conj_of(phase);   // s e^{-i phi}

        // A <- A J (columns p, q)
        for (std::size_t k = 0; k < N; ++k) {
          const T akp = a(k, p);
          const T akq = a(k, q);
          a(k, p) = T(c) * akp + sm * akq;
          a(k, q) = -sp * akp + T(c) * akq;
        }
        // A <- J^dagger A (rows p, q)
        for (std::size_t k = 0; k < N; ++k) {
          const T apk = a(p, k);
          const T aqk = a(q, k);
          a(p, k) = T(c) * apk + sp * aqk;
          a(q, k) = -sm * apk + T(c) * aqk;
        }
        a(p, q) = T{};
        a(q, p) = T{};
        a(p, p) = T(std::real(a(p, p)));
        a(q, q) = T(std::real(a(q, q)));
        for (std::size_t k = 0; k < N; ++k) {
          const T vkp = v(k, p);
          const T vkq = v(k, q);
          v(k, p) = T(c) * vkp + sm * vkq;
          v(k, q) = -sp * vkp + T(c) * vkq;
        }
      }
    }
  }

  std::array<std::size_t, N> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return std::real(a(i, i)) < std::real(a(j, j)); });
  Spectrum<T, N> out;
  for (std::size_t col = 0; col < N; ++col) {
    out.values[col] = std::real(a(order[col], order[col]));
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, col) = v(r, order[col]);
  }
  return out;
}

}  // namespace detail

inline constexpr double kSymmetryTolerance = 1e-12;

/// Eigen-decomposition of a real symmetric matrix. Rejects input whose
/// entry-wise asymmetry exceeds 1e-12.
template <std::size_t N>
Spectrum<double, N> eig_sym(const Matrix<double, N>& m, const JacobiOptions& opt = {}) {
  for (double x : m.data)
    if (!std::isfinite(x)) throw InputError("eig_sym: non-finite entry");
  if (hermiticity_defect(m) > kSymmetryTolerance) throw InputError("eig_sym: matrix is not symmetric");
  return detail::jacobi(m, opt);
}

/// Eigen-decomposition of a complex Hermitian matrix (any fixed size).
template <std::size_t N>
Spectrum<cplx, N> eig_herm(const CMat<N>& m, const JacobiOptions& opt = {}) {
  for (const auto& x : m.data)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) throw InputError("eig_herm: non-finite entry");
  if (hermiticity_defect(m) > kHermitianTolerance) throw InputError("eig_herm: matrix is not Hermitian");
  return detail::jacobi(m, opt);
}

inline Spectrum<cplx, 8> eig_herm(const HermMat8& m, const JacobiOptions& opt = {}) {
  return detail::jacobi(m.matrix(), opt);
}

// ---------------------------------------------------------------------------
// Pauli matrices and the 64-element three-qubit Pauli basis.

enum class Pauli : unsigned char { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr std::array<Pauli, 4> kPaulis{Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

inline char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

inline CMat2 pauli_matrix(Pauli p) {
  using namespace std::complex_literals;
  CMat2 m{};
  switch (p) {
    case Pauli::I:
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
    case Pauli::X:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Pauli::Y:
      m(0, 1) = -1.0i;
      m(1, 0) = 1.0i;
      break;
    case Pauli::Z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

/// sigma_a (x) sigma_b (x) sigma_c; basis index 4a+2b+c with A leftmost.
struct PauliTriple {
  Pauli a = Pauli::I;
  Pauli b = Pauli::I;
  Pauli c = Pauli::I;

  /// Position in the 64-element basis: 16a + 4b + c.
  std::size_t index() const {
    return 16u * static_cast<std::size_t>(a) + 4u * static_cast<std::size_t>(b) + static_cast<std::size_t>(c);
  }
  static PauliTriple from_index(std::size_t i) {
    return {static_cast<Pauli>((i / 16) % 4), static_cast<Pauli>((i / 4) % 4), static_cast<Pauli>(i % 4)};
  }
  std::string label() const { return {pauli_char(a), pauli_char(b), pauli_char(c)}; }

  CMat8 matrix() const { return kron(kron(pauli_matrix(a), pauli_matrix(b)), pauli_matrix(c)); }

  friend bool operator==(const PauliTriple&, const PauliTriple&) = default;
};

/// All 64 products ordered by PauliTriple::index().
inline const std::array<HermMat8, 64>& pauli_basis() {
  static const std::array<HermMat8, 64> basis = [] {
    std::array<HermMat8, 64> out;
    for (std::size_t i = 0; i < 64; ++i) out[i] = HermMat8(PauliTriple::from_index(i).matrix());
    return out;
  }();
  return basis;
}

}  // namespace ghzclass
