#include "jtower/algebra.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace jtower {

namespace {

SparseEchelon::Entries to_entries(const Vec& v) {
  SparseEchelon::Entries e;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) e.emplace(static_cast<std::uint32_t>(i), v[i]);
  return e;
}

void check_dim(const Vec& v, std::size_t n, const char* what) {
  if (v.size() != n) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

Algebra::Algebra(Field f, std::size_t dim, Vec unit, const std::vector<StructureConstant>& constants)
    : field_(f), dim_(dim), unit_(std::move(unit)), table_(dim * dim) {
  check_dim(unit_, dim_, "unit vector");
  for (const auto& sc : constants) {
    if (sc.i >= dim || sc.j >= dim || sc.k >= dim)
      throw std::invalid_argument("structure constant index out of range");
  }
  // Accumulate duplicates, then store sorted by k.
  std::vector<std::map<std::uint32_t, Scalar>> acc(dim * dim);
  for (const auto& sc : constants) {
    auto [it, inserted] = acc[sc.i * dim + sc.j].try_emplace(static_cast<std::uint32_t>(sc.k), f.zero());
    it->second += sc.c;
  }
  for (std::size_t idx = 0; idx < acc.size(); ++idx)
    for (auto& [k, c] : acc[idx])
      if (!c.is_zero()) table_[idx].emplace_back(k, c);
}

Algebra Algebra::from_products(Field f, std::size_t dim, Vec unit,
                               const std::function<Vec(std::size_t, std::size_t)>& product) {
  Algebra a;
  a.field_ = f;
  a.dim_ = dim;
  a.unit_ = std::move(unit);
  check_dim(a.unit_, dim, "unit vector");
  a.table_.resize(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      Vec p = product(i, j);
      check_dim(p, dim, "product");
      auto& terms = a.table_[i * dim + j];
      for (std::size_t k = 0; k < dim; ++k)
        if (!p[k].is_zero()) terms.emplace_back(static_cast<std::uint32_t>(k), p[k]);
    }
  return a;
}

Vec Algebra::basis_product(std::size_t i, std::size_t j) const {
  Vec out = zero();
  for (const auto& [k, c] : terms(i, j)) out[k] = c;
  return out;
}

Vec Algebra::multiply(const Vec& a, const Vec& b) const {
  check_dim(a, dim_, "multiply");
  check_dim(b, dim_, "multiply");
  Vec out = zero();
  std::vector<std::size_t> nz_b;
  for (std::size_t j = 0; j < dim_; ++j)
    if (!b[j].is_zero()) nz_b.push_back(j);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i].is_zero()) continue;
    for (auto j : nz_b) {
      const auto& t = table_[i * dim_ + j];
      if (t.empty()) continue;
      Scalar ab = a[i] * b[j];
      for (const auto& [k, c] : t) out[k].addmul(ab, c);
    }
  }
  return out;
}

Vec Algebra::product(std::initializer_list<std::reference_wrapper<const Vec>> factors) const {
  if (factors.size() == 0) return unit_;
  auto it = factors.begin();
  Vec acc = it->get();
  for (++it; it != factors.end(); ++it) acc = multiply(acc, it->get());
  return acc;
}

Matrix Algebra::left_multiplication(const Vec& a) const {
  check_dim(a, dim_, "left_multiplication");
  Matrix m(field_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& [k, c] : table_[i * dim_ + j]) m(k, j).addmul(a[i], c);
  }
  return m;
}

Matrix Algebra::right_multiplication(const Vec& a) const {
  check_dim(a, dim_, "right_multiplication");
  Matrix m(field_, dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (a[j].is_zero()) continue;
    for (std::size_t i = 0; i < dim_; ++i)
      for (const auto& [k, c] : table_[i * dim_ + j]) m(k, i).addmul(a[j], c);
  }
  return m;
}

std::vector<StructureConstant> Algebra::structure_constants() const {
  std::vector<StructureConstant> out;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& [k, c] : table_[i * dim_ + j]) out.push_back({i, j, k, c});
  return out;
}

AlgebraCheck verify_algebra(const Algebra& alg) {
  AlgebraCheck r;
  const std::size_t n = alg.dim();
  for (std::size_t i = 0; i < n; ++i) {
    Vec e = alg.basis(i);
    Vec left = alg.multiply(alg.unit(), e);
    Vec right = alg.multiply(e, alg.unit());
    if (left != e || right != e) {
      r.ok = false;
      r.failure = "unit";
      r.witness = {i};
      r.lhs = left != e ? left : right;
      r.rhs = e;
      return r;
    }
  }
  // (e_i e_j) e_k against e_i (e_j e_k), accumulated sparsely.
  Vec lhs = alg.zero();
  Vec rhs = alg.zero();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& ij = alg.terms(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        for (auto& s : lhs) s = alg.field().zero();
        for (auto& s : rhs) s = alg.field().zero();
        for (const auto& [m, c] : ij)
          for (const auto& [p, d] : alg.terms(m, k)) lhs[p].addmul(c, d);
        for (const auto& [m, c] : alg.terms(j, k))
          for (const auto& [p, d] : alg.terms(i, m)) rhs[p].addmul(c, d);
        if (lhs != rhs) {
          r.ok = false;
          r.failure = "associativity";
          r.witness = {i, j, k};
          r.lhs = lhs;
          r.rhs = rhs;
          return r;
        }
      }
    }
  return r;
}

Subspace Subspace::span(const Field& f, std::size_t ambient, const std::vector<Vec>& vectors) {
  Subspace s;
  s.field_ = f;
  s.ambient_ = ambient;
  if (!vectors.empty()) {
    for (const auto& v : vectors) check_dim(v, ambient, "span");
    Echelon e = rref(Matrix::from_rows(f, ambient, vectors));
    for (std::size_t r = 0; r < e.pivots.size(); ++r) s.basis_.push_back(e.reduced.row(r));
  }
  s.prepare();
  return s;
}

Subspace Subspace::from_basis(const Field& f, std::size_t ambient, std::vector<Vec> basis) {
  Subspace s;
  s.field_ = f;
  s.ambient_ = ambient;
  for (const auto& v : basis) check_dim(v, ambient, "from_basis");
  s.basis_ = std::move(basis);
  s.prepare();
  return s;
}

Subspace Subspace::from_columns(const Matrix& embedding) {
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < embedding.cols(); ++c) cols.push_back(embedding.column(c));
  return from_basis(embedding.field(), embedding.rows(), std::move(cols));
}

Subspace Subspace::whole(const Field& f, std::size_t n) {
  std::vector<Vec> b;
  for (std::size_t i = 0; i < n; ++i) b.push_back(unit_vector(f, n, i));
  return from_basis(f, n, std::move(b));
}

void Subspace::prepare() {
  pivots_.clear();
  if (basis_.empty()) {
    pivot_inverse_ = Matrix(field_, 0, 0);
    return;
  }
  Echelon e = rref(Matrix::from_rows(field_, ambient_, basis_));
  if (e.pivots.size() != basis_.size()) throw std::invalid_argument("subspace basis is linearly dependent");
  pivots_ = e.pivots;
  const std::size_t d = basis_.size();
  Matrix block(field_, d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < d; ++k) block(r, k) = basis_[r][pivots_[k]];
  auto inv = invert(block);
  if (!inv) throw std::logic_error("pivot block of an independent basis is singular");
  pivot_inverse_ = std::move(*inv);
}

Matrix Subspace::embedding() const { return Matrix::from_columns(field_, ambient_, basis_); }

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  check_dim(v, ambient_, "coordinates");
  const std::size_t d = basis_.size();
  Vec c = zero_vector(field_, d);
  // c = v_P * block^{-1}
  for (std::size_t k = 0; k < d; ++k) {
    const Scalar& vk = v[pivots_[k]];
    if (vk.is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) c[j].addmul(vk, pivot_inverse_(k, j));
  }
  if (combine(c) != v) return std::nullopt;
  return c;
}

Vec Subspace::coordinates_or_throw(const Vec& v, const std::string& what) const {
  auto c = coordinates(v);
  if (!c) throw std::domain_error(what);
  return *c;
}

Vec Subspace::combine(const Vec& coords) const {
  check_dim(coords, basis_.size(), "combine");
  Vec out = zero_vector(field_, ambient_);
  for (std::size_t i = 0; i < coords.size(); ++i) axpy(out, coords[i], basis_[i]);
  return out;
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) return false;
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Vec& v) { return contains(v); });
}

bool is_unital_subalgebra(const Algebra& alg, const Subspace& s) {
  if (s.ambient_dim() != alg.dim()) return false;
  if (!s.contains(alg.unit())) return false;
  for (const auto& a : s.basis())
    for (const auto& b : s.basis())
      if (!s.contains(alg.multiply(a, b))) return false;
  return true;
}

Algebra induced_algebra(const Algebra& alg, const Subspace& s) {
  if (s.ambient_dim() != alg.dim()) throw std::invalid_argument("induced_algebra: ambient mismatch");
  auto unit = s.coordinates(alg.unit());
  if (!unit) throw std::invalid_argument("subspace does not contain the unit");
  return Algebra::from_products(alg.field(), s.dim(), *unit, [&](std::size_t i, std::size_t j) {
    return s.coordinates_or_throw(alg.multiply(s.vector(i), s.vector(j)), "subspace is not closed under products");
  });
}

namespace {

// Span of all words in the generators (including the empty word).
std::size_t generated_dim(const Algebra& alg, const std::vector<Vec>& gens, SparseEchelon& ech) {
  std::deque<Vec> queue;
  if (ech.insert(to_entries(alg.unit()))) queue.push_back(alg.unit());
  while (!queue.empty()) {
    Vec w = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Vec p = alg.multiply(w, g);
      if (ech.insert(to_entries(p))) queue.push_back(std::move(p));
    }
  }
  return ech.rank();
}

}  // namespace

std::vector<Vec> algebra_generators(const Algebra& alg, const Subspace& s) {
  std::vector<Vec> gens;
  std::size_t reached = 0;
  {
    SparseEchelon ech(alg.field(), alg.dim());
    reached = generated_dim(alg, gens, ech);
  }
  for (const auto& v : s.basis()) {
    if (reached == s.dim()) break;
    SparseEchelon probe(alg.field(), alg.dim());
    generated_dim(alg, gens, probe);
    if (!probe.insert(to_entries(v))) continue;
    gens.push_back(v);
    SparseEchelon ech(alg.field(), alg.dim());
    reached = generated_dim(alg, gens, ech);
  }
  return gens;
}

Subspace centralizer(const Algebra& alg, const Subspace& s) {
  if (!is_unital_subalgebra(alg, s)) throw std::invalid_argument("centralizer: not a unital subalgebra");
  const std::size_t n = alg.dim();
  auto gens = algebra_generators(alg, s);
  Matrix system(alg.field(), gens.size() * n, n);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    Matrix d = alg.left_multiplication(gens[g]) - alg.right_multiplication(gens[g]);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) system(g * n + r, c) = d(r, c);
  }
  if (gens.empty()) return Subspace::whole(alg.field(), n);
  return Subspace::span(alg.field(), n, kernel(system));
}

Subspace center(const Algebra& alg) { return centralizer(alg, Subspace::whole(alg.field(), alg.dim())); }

Vec tensor_flat(const Vec& x, const Vec& y) {
  Vec out;
  out.reserve(x.size() * y.size());
  for (const auto& a : x)
    for (const auto& b : y) out.push_back(a * b);
  return out;
}

TensorQuotient::TensorQuotient(Field f, std::size_t dim_x, std::size_t dim_y, const std::vector<Matrix>& right_on_x,
                               const std::vector<Matrix>& left_on_y)
    : field_(f), dim_x_(dim_x), dim_y_(dim_y) {
  if (right_on_x.size() != left_on_y.size()) throw std::invalid_argument("TensorQuotient: action count mismatch");
  const std::size_t flat = dim_x * dim_y;
  SparseEchelon ech(f, flat);
  for (std::size_t g = 0; g < right_on_x.size(); ++g) {
    const Matrix& rx = right_on_x[g];
    const Matrix& ly = left_on_y[g];
    if (rx.rows() != dim_x || rx.cols() != dim_x || ly.rows() != dim_y || ly.cols() != dim_y)
      throw std::invalid_argument("TensorQuotient: action matrix shape");
    for (std::size_t i = 0; i < dim_x; ++i)
      for (std::size_t j = 0; j < dim_y; ++j) {
        SparseEchelon::Entries rel;
        // (e_i n) (x) e_j
        for (std::size_t a = 0; a < dim_x; ++a) {
          if (rx(a, i).is_zero()) continue;
          auto [it, ins] = rel.try_emplace(static_cast<std::uint32_t>(a * dim_y + j), f.zero());
          it->second += rx(a, i);
        }
        // - e_i (x) (n e_j)
        for (std::size_t b = 0; b < dim_y; ++b) {
          if (ly(b, j).is_zero()) continue;
          auto [it, ins] = rel.try_emplace(static_cast<std::uint32_t>(i * dim_y + b), f.zero());
          it->second -= ly(b, j);
        }
        for (auto it = rel.begin(); it != rel.end();) it = it->second.is_zero() ? rel.erase(it) : std::next(it);
        if (rel.empty()) continue;
        relations_.push_back(rel);
        ech.insert(std::move(rel));
      }
  }
  ech.finalize();
  flat_to_basis_.assign(flat, -1);
  for (std::size_t c = 0; c < flat; ++c)
    if (!ech.is_pivot(c)) {
      flat_to_basis_[c] = static_cast<std::int64_t>(basis_flat_.size());
      basis_flat_.push_back(c);
    }
  pivot_images_.resize(flat);
  for (std::size_t c = 0; c < flat; ++c) {
    if (!ech.is_pivot(c)) continue;
    for (const auto& [col, coeff] : ech.pivot_row(c)) {
      if (col == c) continue;
      pivot_images_[c].emplace_back(static_cast<std::uint32_t>(flat_to_basis_[col]), -coeff);
    }
  }
}

TensorQuotient TensorQuotient::over_subalgebra(const Algebra& alg, const Subspace& n) {
  std::vector<Matrix> right, left;
  for (const auto& g : algebra_generators(alg, n)) {
    right.push_back(alg.right_multiplication(g));
    left.push_back(alg.left_multiplication(g));
  }
  return TensorQuotient(alg.field(), alg.dim(), alg.dim(), right, left);
}

std::pair<std::size_t, std::size_t> TensorQuotient::basis_pair(std::size_t q) const {
  std::size_t flat = basis_flat_.at(q);
  return {flat / dim_y_, flat % dim_y_};
}

Vec TensorQuotient::project(const Vec& flat) const {
  check_dim(flat, flat_dim(), "project");
  Vec out = zero_vector(field_, dim());
  for (std::size_t f = 0; f < flat.size(); ++f) {
    if (flat[f].is_zero()) continue;
    if (flat_to_basis_[f] >= 0) {
      out[static_cast<std::size_t>(flat_to_basis_[f])] += flat[f];
    } else {
      for (const auto& [q, c] : pivot_images_[f]) out[q].addmul(flat[f], c);
    }
  }
  return out;
}

Vec TensorQuotient::project_basis(std::size_t i, std::size_t j) const {
  const std::size_t f = i * dim_y_ + j;
  Vec out = zero_vector(field_, dim());
  if (flat_to_basis_[f] >= 0) {
    out[static_cast<std::size_t>(flat_to_basis_[f])] = field_.one();
  } else {
    for (const auto& [q, c] : pivot_images_[f]) out[q] = c;
  }
  return out;
}

Vec TensorQuotient::project_pure(const Vec& x, const Vec& y) const {
  check_dim(x, dim_x_, "project_pure");
  check_dim(y, dim_y_, "project_pure");
  return project(tensor_flat(x, y));
}

Vec TensorQuotient::section(const Vec& coords) const {
  check_dim(coords, dim(), "section");
  Vec out = zero_vector(field_, flat_dim());
  for (std::size_t q = 0; q < coords.size(); ++q) out[basis_flat_[q]] = coords[q];
  return out;
}

namespace {

Vec flatten(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

Matrix unflatten(const Field& f, std::size_t n, const Vec& v) {
  Matrix m(f, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = v[r * n + c];
  return m;
}

}  // namespace

std::optional<Vec> EndomorphismAlgebra::coordinates(const Matrix& f) const { return flat.coordinates(flatten(f)); }

Matrix EndomorphismAlgebra::matrix(const Vec& coords) const {
  const std::size_t n = basis.empty() ? 0 : basis.front().rows();
  return unflatten(flat.field(), n, flat.combine(coords));
}

EndomorphismAlgebra endomorphism_algebra(const Field& f, std::size_t dim, const std::vector<Matrix>& right_action) {
  for (const auto& r : right_action)
    if (r.rows() != dim || r.cols() != dim) throw std::invalid_argument("endomorphism_algebra: action matrix shape");
  const std::size_t n2 = dim * dim;
  // F R - R F = 0 for each generator; unknown F flattened row-major.
  Matrix system(f, right_action.size() * n2, n2);
  for (std::size_t g = 0; g < right_action.size(); ++g) {
    const Matrix& rm = right_action[g];
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) {
        const std::size_t row = g * n2 + r * dim + c;
        for (std::size_t k = 0; k < dim; ++k) {
          system(row, r * dim + k) += rm(k, c);
          system(row, k * dim + c) -= rm(r, k);
        }
      }
  }
  std::vector<Vec> sol = right_action.empty() ? std::vector<Vec>{} : kernel(system);
  if (right_action.empty())
    for (std::size_t i = 0; i < n2; ++i) sol.push_back(unit_vector(f, n2, i));
  EndomorphismAlgebra out;
  out.flat = Subspace::span(f, n2, sol);
  for (const auto& v : out.flat.basis()) out.basis.push_back(unflatten(f, dim, v));
  Vec unit = out.flat.coordinates_or_throw(flatten(Matrix::identity(f, dim)), "identity is not module-linear");
  out.algebra = Algebra::from_products(f, out.basis.size(), unit, [&](std::size_t i, std::size_t j) {
    return out.flat.coordinates_or_throw(flatten(out.basis[i] * out.basis[j]), "composition left the algebra");
  });
  return out;
}

EndomorphismAlgebra endomorphism_algebra(const Algebra& n, const std::vector<Matrix>& action) {
  if (action.size() != n.dim()) throw std::invalid_argument("endomorphism_algebra: one action matrix per basis element");
  if (action.empty()) throw std::invalid_argument("endomorphism_algebra: empty acting algebra");
  const std::size_t dim = action.front().rows();
  for (const auto& a : action)
    if (a.rows() != dim || a.cols() != dim) throw std::invalid_argument("endomorphism_algebra: action matrix shape");
  auto act = [&](const Vec& x) {
    Matrix m(n.field(), dim, dim);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) m = m + x[i] * action[i];
    return m;
  };
  if (act(n.unit()) != Matrix::identity(n.field(), dim))
    throw std::invalid_argument("module axiom violated: unit does not act as the identity");
  for (std::size_t i = 0; i < n.dim(); ++i)
    for (std::size_t j = 0; j < n.dim(); ++j)
      if (act(n.basis_product(i, j)) != action[j] * action[i])
        throw std::invalid_argument("module axiom violated: (v e_" + std::to_string(i) + ") e_" + std::to_string(j));
  return endomorphism_algebra(n.field(), dim, action);
}

MorphismCheck check_morphism(const Matrix& f, const Algebra& a, const Algebra& b) {
  if (f.rows() != b.dim() || f.cols() != a.dim()) throw std::invalid_argument("check_morphism: shape mismatch");
  MorphismCheck r;
  std::vector<Vec> images;
  for (std::size_t i = 0; i < a.dim(); ++i) images.push_back(f.column(i));
  r.unital = f.apply(a.unit()) == b.unit();
  for (std::size_t i = 0; i < a.dim() && r.multiplicative; ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (f.apply(a.basis_product(i, j)) != b.multiply(images[i], images[j])) {
        r.multiplicative = false;
        r.witness = {i, j};
        break;
      }
    }
  const std::size_t rk = rank(f);
  r.injective = rk == a.dim();
  r.surjective = rk == b.dim();
  return r;
}

}  // namespace jtower
