#include "jtower/exact_linear.hpp"

#include <algorithm>
#include <stdexcept>

namespace jtower {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 62)) throw std::invalid_argument("modulus too large");
  return Field(p);
}

Scalar Field::zero() const { return Scalar(0, modulus_); }
Scalar Field::one() const { return Scalar(1, modulus_); }
Scalar Field::from_int(long long n) const { return Scalar(n, modulus_); }

Scalar Field::from_ratio(long long num, long long den) const {
  if (den == 0) throw std::domain_error("zero denominator");
  mpq_class q{mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))};
  q.canonicalize();
  return Scalar(q, modulus_);
}

Scalar Field::parse(std::string_view text) const {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty scalar");
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den))
    throw std::invalid_argument("malformed scalar '" + s + "'");
  mpq_class q{mpz_class(num), mpz_class(den)};
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return Scalar(q, modulus_);
}

std::string Field::describe() const {
  return modulus_ == 0 ? std::string("Q") : "F_" + std::to_string(modulus_);
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_rational(const mpq_class& q, std::uint64_t p) {
  mpz_class pz(static_cast<unsigned long>(p));
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  if (den != 1) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
      throw std::domain_error("denominator not invertible modulo " + std::to_string(p));
    num *= inv;
  }
  mpz_fdiv_r(num.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
  return num.get_ui();
}

}  // namespace

Scalar::Scalar(long long n, std::uint64_t modulus) : modulus_(modulus) {
  if (modulus_ == 0) {
    q_ = static_cast<long>(n);
  } else {
    long long m = n % static_cast<long long>(modulus_);
    r_ = static_cast<std::uint64_t>(m < 0 ? m + static_cast<long long>(modulus_) : m);
  }
}

Scalar::Scalar(const mpq_class& v, std::uint64_t modulus) : modulus_(modulus) {
  if (modulus_ == 0) {
    q_ = v;
    q_.canonicalize();
  } else {
    r_ = reduce_rational(v, modulus_);
  }
}

mpq_class Scalar::value() const {
  return modulus_ ? mpq_class(static_cast<unsigned long>(r_)) : q_;
}

std::uint64_t Scalar::residue_in(std::uint64_t modulus) const {
  if (modulus_ == modulus) return r_;
  if (modulus_ != 0) throw std::logic_error("mixing scalars from different fields");
  return reduce_rational(q_, modulus);
}

void Scalar::promote(std::uint64_t modulus) {
  r_ = reduce_rational(q_, modulus);
  q_ = 0;
  modulus_ = modulus;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (modulus_ == 0 && o.modulus_ == 0) {
    q_ += o.q_;
    return *this;
  }
  if (modulus_ == 0) promote(o.modulus_);
  r_ = add_mod(r_, o.residue_in(modulus_), modulus_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (modulus_ == 0 && o.modulus_ == 0) {
    q_ -= o.q_;
    return *this;
  }
  if (modulus_ == 0) promote(o.modulus_);
  r_ = sub_mod(r_, o.residue_in(modulus_), modulus_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (modulus_ == 0 && o.modulus_ == 0) {
    q_ *= o.q_;
    return *this;
  }
  if (modulus_ == 0) promote(o.modulus_);
  r_ = mul_mod(r_, o.residue_in(modulus_), modulus_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  *this *= o.inverse();
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (modulus_ == 0)
    r.q_ = -q_;
  else
    r.r_ = r_ == 0 ? 0 : modulus_ - r_;
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.modulus_ == 0 && b.modulus_ == 0) return a.q_ == b.q_;
  if (a.modulus_ != 0 && b.modulus_ != 0) return a.modulus_ == b.modulus_ && a.r_ == b.r_;
  try {
    if (a.modulus_ == 0) return a.residue_in(b.modulus_) == b.r_;
    return b.residue_in(a.modulus_) == a.r_;
  } catch (const std::domain_error&) {
    return false;
  }
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  Scalar r = *this;
  if (modulus_ == 0) {
    r.q_ = 1 / q_;
    r.q_.canonicalize();
  } else {
    r.r_ = pow_mod(r_, modulus_ - 2, modulus_);
  }
  return r;
}

std::string Scalar::to_string() const {
  if (modulus_ != 0) return std::to_string(r_);
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

void Scalar::submul(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return;
  if (modulus_ == 0 && a.modulus_ == 0 && b.modulus_ == 0) {
    mpq_class t = a.q_ * b.q_;
    q_ -= t;
    return;
  }
  if (modulus_ != 0 && a.modulus_ == modulus_ && b.modulus_ == modulus_) {
    r_ = sub_mod(r_, mul_mod(a.r_, b.r_, modulus_), modulus_);
    return;
  }
  *this -= a * b;
}

void Scalar::addmul(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return;
  if (modulus_ == 0 && a.modulus_ == 0 && b.modulus_ == 0) {
    mpq_class t = a.q_ * b.q_;
    q_ += t;
    return;
  }
  if (modulus_ != 0 && a.modulus_ == modulus_ && b.modulus_ == modulus_) {
    r_ = add_mod(r_, mul_mod(a.r_, b.r_, modulus_), modulus_);
    return;
  }
  *this += a * b;
}

Vec zero_vector(const Field& f, std::size_t n) { return Vec(n, f.zero()); }

Vec unit_vector(const Field& f, std::size_t n, std::size_t i) {
  Vec v = zero_vector(f, n);
  v.at(i) = f.one();
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec operator*(const Scalar& s, const Vec& v) {
  Vec r = v;
  for (auto& x : r) x *= s;
  return r;
}

void axpy(Vec& y, const Scalar& s, const Vec& x) {
  if (y.size() != x.size()) throw std::invalid_argument("vector size mismatch");
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < y.size(); ++i) y[i].addmul(s, x[i]);
}

Scalar dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Scalar s = a.empty() ? Scalar() : a[0] * Scalar(0, a[0].modulus());
  for (std::size_t i = 0; i < a.size(); ++i) s.addmul(a[i], b[i]);
  return s;
}

std::vector<std::string> to_strings(const Vec& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Matrix Matrix::from_rows(const Field& f, std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

Matrix Matrix::from_columns(const Field& f, std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(f, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

Vec Matrix::row(std::size_t r) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vec Matrix::column(std::size_t c) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

void Matrix::set_column(std::size_t c, const Vec& v) {
  if (v.size() != rows_ || c >= cols_) throw std::invalid_argument("set_column: shape mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

void Matrix::set_row(std::size_t r, const Vec& v) {
  if (v.size() != cols_ || r >= rows_) throw std::invalid_argument("set_row: shape mismatch");
  std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  Vec out = zero_vector(field_, rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) out[r].addmul((*this)(r, c), v[c]);
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  Matrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j).addmul(aik, b(k, j));
    }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

Matrix operator*(const Scalar& s, const Matrix& m) {
  Matrix out = m;
  for (auto& x : out.data_) x *= s;
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::vector<std::vector<std::string>> Matrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = jtower::to_strings(row(r));
  return out;
}

Echelon rref(Matrix m) {
  Echelon result;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < cols && lead_row < rows; ++c) {
    std::size_t pivot = lead_row;
    while (pivot < rows && m(pivot, c).is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != lead_row)
      for (std::size_t j = c; j < cols; ++j) std::swap(m(pivot, j), m(lead_row, j));
    Scalar inv = m(lead_row, c).inverse();
    for (std::size_t j = c; j < cols; ++j) m(lead_row, j) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead_row || m(r, c).is_zero()) continue;
      Scalar factor = m(r, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (m(lead_row, j).is_zero()) continue;
        m(r, j).submul(factor, m(lead_row, j));
      }
    }
    result.pivots.push_back(c);
    ++lead_row;
  }
  result.reduced = std::move(m);
  return result;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vec> kernel(const Matrix& m) {
  Echelon e = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v = zero_vector(m.field(), cols);
    v[f] = m.field().one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Solution> solve(const Matrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  Echelon e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Solution s;
  s.particular = zero_vector(a.field(), a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) s.particular[e.pivots[r]] = e.reduced(r, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v = zero_vector(a.field(), a.cols());
    v[f] = a.field().one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    s.kernel.push_back(std::move(v));
  }
  return s;
}

std::optional<Matrix> solve_columns(const Matrix& a, const Matrix& b) {
  if (b.rows() != a.rows()) throw std::invalid_argument("solve_columns: row mismatch");
  const std::size_t n = a.cols();
  Matrix aug(a.field(), a.rows(), n + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) aug(r, n + c) = b(r, c);
  }
  Echelon e = rref(std::move(aug));
  Matrix x(a.field(), n, b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= n) return std::nullopt;
    for (std::size_t c = 0; c < b.cols(); ++c) x(e.pivots[r], c) = e.reduced(r, n + c);
  }
  return x;
}

std::optional<Matrix> invert(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("invert: matrix is not square");
  const std::size_t n = a.rows();
  auto x = solve_columns(a, Matrix::identity(a.field(), n));
  if (!x || rank(a) != n) return std::nullopt;
  return x;
}

SparseEchelon::SparseEchelon(Field f, std::size_t n) : field_(f), pivot_row_(n, -1) {}

void SparseEchelon::eliminate(Entries& v, bool stop_at_free) const {
  // Walk columns from the top down; rows only touch columns at or below their pivot.
  auto it = v.end();
  while (it != v.begin()) {
    --it;
    if (it->second.is_zero()) {
      it = v.erase(it);
      continue;
    }
    const auto row_index = pivot_row_[it->first];
    if (row_index < 0) {
      if (stop_at_free) return;
      continue;
    }
    const Scalar factor = it->second;
    const auto col = it->first;
    for (const auto& [c, coeff] : rows_[static_cast<std::size_t>(row_index)]) {
      if (c == col) continue;
      auto [pos, inserted] = v.try_emplace(c, field_.zero());
      pos->second.submul(factor, coeff);
    }
    it = v.erase(v.find(col));
  }
}

bool SparseEchelon::insert(Entries v) {
  eliminate(v, true);
  while (!v.empty() && v.rbegin()->second.is_zero()) v.erase(std::prev(v.end()));
  if (v.empty()) return false;
  const auto pivot = v.rbegin()->first;
  const Scalar inv = v.rbegin()->second.inverse();
  std::vector<std::pair<std::uint32_t, Scalar>> row;
  row.reserve(v.size());
  for (auto& [c, coeff] : v) {
    if (coeff.is_zero()) continue;
    row.emplace_back(c, coeff * inv);
  }
  pivot_row_[pivot] = static_cast<std::int64_t>(rows_.size());
  rows_.push_back(std::move(row));
  return true;
}

SparseEchelon::Entries SparseEchelon::reduce(Entries v) const {
  eliminate(v, false);
  for (auto it = v.begin(); it != v.end();) it = it->second.is_zero() ? v.erase(it) : std::next(it);
  return v;
}

void SparseEchelon::finalize() {
  for (std::size_t c = 0; c < pivot_row_.size(); ++c) {
    if (pivot_row_[c] < 0) continue;
    auto& row = rows_[static_cast<std::size_t>(pivot_row_[c])];
    Entries v;
    for (auto& [col, coeff] : row)
      if (col != c) v.emplace(col, coeff);
    eliminate(v, false);
    row.clear();
    for (auto& [col, coeff] : v)
      if (!coeff.is_zero()) row.emplace_back(col, coeff);
    row.emplace_back(static_cast<std::uint32_t>(c), field_.one());
  }
}

}  // namespace jtower
