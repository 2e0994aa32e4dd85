#include "qhopf/tensor.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace qhopf {

namespace {

Key checked_slots(int dim, int arity) {
  if (dim <= 0) throw ShapeError("tensor dimension must be positive");
  if (arity < 0) throw ShapeError("tensor arity must be non-negative");
  Key slots = 1;
  for (int i = 0; i < arity; ++i) {
    if (slots > std::numeric_limits<Key>::max() / static_cast<Key>(dim)) {
      throw ShapeError("tensor index space exceeds 64-bit keys");
    }
    slots *= static_cast<Key>(dim);
  }
  return slots;
}

Key power(int dim, int exponent) {
  Key r = 1;
  for (int i = 0; i < exponent; ++i) r *= static_cast<Key>(dim);
  return r;
}

void require_compatible(const SparseTensor& a, const SparseTensor& b, const char* op) {
  if (!(a.field() == b.field())) {
    throw FieldMismatch(std::string(op) + ": tensors over different fields");
  }
  if (a.dim() != b.dim()) throw ShapeError(std::string(op) + ": tensors over different algebras");
  if (a.arity() != b.arity()) {
    throw ArityMismatch(std::string(op) + ": arity " + std::to_string(a.arity()) + " vs " +
                        std::to_string(b.arity()));
  }
}

constexpr Key kDenseLimit = Key{1} << 16;

// Small dense scratch vector for products of elements of A.
using ElementVec = std::vector<std::pair<int, Scalar>>;

class VecMultiplier {
 public:
  explicit VecMultiplier(const Algebra& algebra)
      : algebra_(algebra),
        acc_(static_cast<std::size_t>(algebra.dim()), Scalar::zero(algebra.field())),
        hit_(static_cast<std::size_t>(algebra.dim()), 0) {}

  ElementVec mul(const ElementVec& a, const ElementVec& b) {
    touched_.clear();
    for (const auto& [i, x] : a) {
      for (const auto& [j, y] : b) {
        const auto& terms = algebra_.product(i, j);
        if (terms.empty()) continue;
        const Scalar xy = x * y;
        for (const Term& t : terms) {
          if (!hit_[t.index]) {
            hit_[t.index] = 1;
            touched_.push_back(t.index);
            acc_[t.index] = xy * t.coeff;
          } else {
            acc_[t.index] += xy * t.coeff;
          }
        }
      }
    }
    std::sort(touched_.begin(), touched_.end());
    ElementVec out;
    for (int k : touched_) {
      hit_[k] = 0;
      if (!acc_[k].is_zero()) out.emplace_back(k, std::move(acc_[k]));
      acc_[k] = Scalar::zero(algebra_.field());
    }
    return out;
  }

 private:
  const Algebra& algebra_;
  std::vector<Scalar> acc_;
  std::vector<char> hit_;
  std::vector<int> touched_;
};

ElementVec to_vec(const SparseTensor& x) {
  ElementVec v;
  v.reserve(x.nnz());
  for (const Entry& e : x.entries()) v.emplace_back(static_cast<int>(e.key), e.value);
  return v;
}

// Decoded multi-indices of all entries, row-major.
std::vector<int> decode_all(const SparseTensor& t) {
  const int k = t.arity();
  std::vector<int> out(t.nnz() * static_cast<std::size_t>(k));
  for (std::size_t e = 0; e < t.nnz(); ++e) {
    Key key = t.entries()[e].key;
    for (int leg = k - 1; leg >= 0; --leg) {
      out[e * k + leg] = static_cast<int>(key % static_cast<Key>(t.dim()));
      key /= static_cast<Key>(t.dim());
    }
  }
  return out;
}

// acc += a * b in A^{⊗k}.
void mult_into(TensorBuilder& acc, const Algebra& algebra, const SparseTensor& a,
               const SparseTensor& b) {
  const int k = a.arity();
  if (k == 0) {
    if (!a.is_zero() && !b.is_zero()) acc.add(Key{0}, a.entries()[0].value * b.entries()[0].value);
    return;
  }
  const Key n = static_cast<Key>(algebra.dim());
  const std::vector<int> ia = decode_all(a);
  const std::vector<int> ib = decode_all(b);
  std::vector<const std::vector<Term>*> lists(static_cast<std::size_t>(k));
  std::vector<std::size_t> pos(static_cast<std::size_t>(k));
  for (std::size_t ea = 0; ea < a.nnz(); ++ea) {
    const Scalar& va = a.entries()[ea].value;
    for (std::size_t eb = 0; eb < b.nnz(); ++eb) {
      bool vanishes = false;
      for (int leg = 0; leg < k; ++leg) {
        lists[leg] = &algebra.product(ia[ea * k + leg], ib[eb * k + leg]);
        if (lists[leg]->empty()) {
          vanishes = true;
          break;
        }
      }
      if (vanishes) continue;
      const Scalar coeff = va * b.entries()[eb].value;
      std::fill(pos.begin(), pos.end(), 0);
      while (true) {
        Key key = 0;
        Scalar c = coeff;
        for (int leg = 0; leg < k; ++leg) {
          const Term& t = (*lists[leg])[pos[leg]];
          key = key * n + static_cast<Key>(t.index);
          c *= t.coeff;
        }
        acc.add(key, c);
        int leg = k - 1;
        while (leg >= 0 && ++pos[leg] == lists[leg]->size()) pos[leg--] = 0;
        if (leg < 0) break;
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SparseTensor

SparseTensor::SparseTensor(Field field, int dim, int arity)
    : field_(field), dim_(dim), arity_(arity), slots_(checked_slots(dim, arity)) {}

SparseTensor SparseTensor::from_entries(
    Field field, int dim, int arity,
    const std::vector<std::pair<std::vector<int>, Scalar>>& entries) {
  TensorBuilder b(field, dim, arity);
  for (const auto& [idx, value] : entries) {
    if (!(value.field() == field)) throw FieldMismatch("tensor entry from a different field");
    b.add(std::span<const int>(idx), value);
  }
  return std::move(b).build();
}

SparseTensor SparseTensor::basis(Field field, int dim, int index) {
  if (index < 0 || index >= dim) throw ShapeError("basis index out of range");
  SparseTensor t(field, dim, 1);
  t.entries_.push_back({static_cast<Key>(index), Scalar::one(field)});
  return t;
}

SparseTensor SparseTensor::constant(const Scalar& value, int dim) {
  SparseTensor t(value.field(), dim, 0);
  if (!value.is_zero()) t.entries_.push_back({0, value});
  return t;
}

Key SparseTensor::key_of(std::span<const int> indices) const {
  if (static_cast<int>(indices.size()) != arity_) {
    throw ShapeError("multi-index has " + std::to_string(indices.size()) + " components, arity is " +
                     std::to_string(arity_));
  }
  Key key = 0;
  for (int i : indices) {
    if (i < 0 || i >= dim_) {
      throw ShapeError("index " + std::to_string(i) + " out of range [0," + std::to_string(dim_) +
                       ")");
    }
    key = key * static_cast<Key>(dim_) + static_cast<Key>(i);
  }
  return key;
}

std::vector<int> SparseTensor::indices_of(Key key) const {
  std::vector<int> out(static_cast<std::size_t>(arity_));
  for (int leg = arity_ - 1; leg >= 0; --leg) {
    out[leg] = static_cast<int>(key % static_cast<Key>(dim_));
    key /= static_cast<Key>(dim_);
  }
  return out;
}

int SparseTensor::leg_index(Key key, int leg) const {
  return static_cast<int>((key / power(dim_, arity_ - 1 - leg)) % static_cast<Key>(dim_));
}

Scalar SparseTensor::at_key(Key key) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const Entry& e, Key k) { return e.key < k; });
  if (it != entries_.end() && it->key == key) return it->value;
  return Scalar::zero(field_);
}

Scalar SparseTensor::at(std::span<const int> indices) const { return at_key(key_of(indices)); }

Scalar SparseTensor::scalar_value() const {
  if (arity_ != 0) throw ArityMismatch("scalar_value needs an arity-0 tensor");
  return entries_.empty() ? Scalar::zero(field_) : entries_[0].value;
}

SparseTensor SparseTensor::scaled(const Scalar& factor) const {
  SparseTensor r(field_, dim_, arity_);
  if (factor.is_zero()) return r;
  r.entries_.reserve(entries_.size());
  for (const Entry& e : entries_) r.entries_.push_back({e.key, e.value * factor});
  return r;
}

SparseTensor SparseTensor::operator-() const {
  SparseTensor r = *this;
  for (Entry& e : r.entries_) e.value = -e.value;
  return r;
}

SparseTensor operator+(const SparseTensor& a, const SparseTensor& b) {
  require_compatible(a, b, "add");
  TensorBuilder acc(a.field(), a.dim(), a.arity());
  acc.add(a, Scalar::one(a.field()));
  acc.add(b, Scalar::one(a.field()));
  return std::move(acc).build();
}

SparseTensor operator-(const SparseTensor& a, const SparseTensor& b) {
  require_compatible(a, b, "sub");
  TensorBuilder acc(a.field(), a.dim(), a.arity());
  acc.add(a, Scalar::one(a.field()));
  acc.add(b, Scalar(a.field(), -1));
  return std::move(acc).build();
}

bool operator==(const SparseTensor& a, const SparseTensor& b) {
  if (!(a.field_ == b.field_) || a.dim_ != b.dim_ || a.arity_ != b.arity_) return false;
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (a.entries_[i].key != b.entries_[i].key || a.entries_[i].value != b.entries_[i].value) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// TensorBuilder

TensorBuilder::TensorBuilder(Field field, int dim, int arity)
    : shape_(field, dim, arity), dense_(shape_.slots() <= kDenseLimit) {}

void TensorBuilder::add(Key key, const Scalar& value) {
  if (value.is_zero()) return;
  if (!dense_) {
    pending_.push_back({key, value});
    return;
  }
  if (values_.empty()) {
    values_.assign(static_cast<std::size_t>(shape_.slots()), Scalar::zero(shape_.field()));
    touched_.assign(static_cast<std::size_t>(shape_.slots()), 0);
  }
  if (!touched_[key]) {
    touched_[key] = 1;
    order_.push_back(key);
    values_[key] = value;
  } else {
    values_[key] += value;
  }
}

void TensorBuilder::add(std::span<const int> indices, const Scalar& value) {
  add(shape_.key_of(indices), value);
}

void TensorBuilder::add(const SparseTensor& t, const Scalar& factor) {
  if (t.dim() != shape_.dim() || t.arity() != shape_.arity()) {
    throw ArityMismatch("accumulating a tensor of a different shape");
  }
  for (const Entry& e : t.entries()) add(e.key, e.value * factor);
}

SparseTensor TensorBuilder::build() && {
  SparseTensor out = std::move(shape_);
  if (dense_) {
    std::sort(order_.begin(), order_.end());
    out.entries_.reserve(order_.size());
    for (Key k : order_) {
      if (!values_[k].is_zero()) out.entries_.push_back({k, std::move(values_[k])});
    }
    return out;
  }
  std::sort(pending_.begin(), pending_.end(),
            [](const Entry& a, const Entry& b) { return a.key < b.key; });
  for (std::size_t i = 0; i < pending_.size();) {
    Key key = pending_[i].key;
    Scalar sum = pending_[i].value;
    std::size_t j = i + 1;
    for (; j < pending_.size() && pending_[j].key == key; ++j) sum += pending_[j].value;
    if (!sum.is_zero()) out.entries_.push_back({key, std::move(sum)});
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Algebra

Algebra::Algebra(Field field, int dim, std::vector<std::vector<Term>> table, SparseTensor unit)
    : field_(field), dim_(dim), table_(std::move(table)), unit_(std::move(unit)) {
  if (table_.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
    throw ShapeError("structure constant table must have dim^2 rows");
  }
  for (auto& row : table_) {
    for (const Term& t : row) {
      if (t.index < 0 || t.index >= dim) throw ShapeError("structure constant index out of range");
    }
    std::sort(row.begin(), row.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
  }
  if (unit_.arity() != 1 || unit_.dim() != dim) throw ShapeError("unit must be an element of A");
}

SparseTensor Algebra::one(int arity) const {
  SparseTensor r = SparseTensor::constant(Scalar::one(field_), dim_);
  for (int i = 0; i < arity; ++i) r = concat(r, unit_);
  return r;
}

Algebra Algebra::opposite() const {
  std::vector<std::vector<Term>> table(table_.size());
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) table[static_cast<std::size_t>(i) * dim_ + j] = product(j, i);
  }
  return Algebra(field_, dim_, std::move(table), unit_);
}

bool operator==(const Algebra& a, const Algebra& b) {
  if (!(a.field_ == b.field_) || a.dim_ != b.dim_ || a.unit_ != b.unit_) return false;
  for (std::size_t i = 0; i < a.table_.size(); ++i) {
    const auto& x = a.table_[i];
    const auto& y = b.table_[i];
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k].index != y[k].index || x[k].coeff != y[k].coeff) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// LinearMap

LinearMap::LinearMap(Field field, int dim, int out_arity, std::vector<std::vector<Entry>> rows)
    : field_(field), dim_(dim), out_arity_(out_arity), rows_(std::move(rows)) {
  if (rows_.size() != static_cast<std::size_t>(dim)) throw ShapeError("linear map needs dim rows");
  const Key slots = checked_slots(dim, out_arity);
  for (auto& row : rows_) {
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
    std::vector<Entry> merged;
    for (Entry& e : row) {
      if (e.key >= slots) throw ShapeError("linear map image index out of range");
      if (!merged.empty() && merged.back().key == e.key) {
        merged.back().value += e.value;
      } else {
        merged.push_back(std::move(e));
      }
    }
    std::erase_if(merged, [](const Entry& e) { return e.value.is_zero(); });
    row = std::move(merged);
  }
}

LinearMap LinearMap::identity(Field field, int dim) {
  std::vector<std::vector<Entry>> rows(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) rows[i].push_back({static_cast<Key>(i), Scalar::one(field)});
  return LinearMap(field, dim, 1, std::move(rows));
}

LinearMap LinearMap::from_matrix(Field field, const linalg::DenseMatrix& m) {
  std::vector<std::vector<Entry>> rows(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (!m[i][j].is_zero()) rows[i].push_back({static_cast<Key>(j), m[i][j]});
    }
  }
  return LinearMap(field, static_cast<int>(m.size()), 1, std::move(rows));
}

SparseTensor LinearMap::image(int i) const {
  TensorBuilder b(field_, dim_, out_arity_);
  for (const Entry& e : row(i)) b.add(e.key, e.value);
  return std::move(b).build();
}

SparseTensor LinearMap::operator()(const SparseTensor& x) const {
  if (x.arity() != 1) throw ArityMismatch("linear map applied to a tensor of arity != 1");
  return apply_legs(x, {this});
}

linalg::DenseMatrix LinearMap::matrix() const {
  if (out_arity_ != 1) throw ArityMismatch("matrix() needs a map A -> A");
  linalg::DenseMatrix m(static_cast<std::size_t>(dim_),
                        std::vector<Scalar>(static_cast<std::size_t>(dim_), Scalar::zero(field_)));
  for (int i = 0; i < dim_; ++i) {
    for (const Entry& e : row(i)) m[i][e.key] = e.value;
  }
  return m;
}

bool operator==(const LinearMap& a, const LinearMap& b) {
  if (!(a.field_ == b.field_) || a.dim_ != b.dim_ || a.out_arity_ != b.out_arity_) return false;
  for (std::size_t i = 0; i < a.rows_.size(); ++i) {
    const auto& x = a.rows_[i];
    const auto& y = b.rows_[i];
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k].key != y[k].key || x[k].value != y[k].value) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Operations

SparseTensor mult(const Algebra& algebra, const SparseTensor& a, const SparseTensor& b) {
  require_compatible(a, b, "mult");
  if (a.dim() != algebra.dim()) throw ShapeError("mult: tensor does not live over this algebra");
  TensorBuilder acc(a.field(), a.dim(), a.arity());
  mult_into(acc, algebra, a, b);
  return std::move(acc).build();
}

SparseTensor mult(const Algebra& algebra,
                  std::initializer_list<std::reference_wrapper<const SparseTensor>> factors) {
  if (factors.size() == 0) throw ArityMismatch("mult: empty product");
  auto it = factors.begin();
  SparseTensor r = it->get();
  for (++it; it != factors.end(); ++it) r = mult(algebra, r, it->get());
  return r;
}

SparseTensor apply_legs(const SparseTensor& t, const LegMaps& maps) {
  const int k = t.arity();
  if (static_cast<int>(maps.size()) != k) {
    throw ShapeError("apply_legs: " + std::to_string(maps.size()) + " maps for arity " +
                     std::to_string(k));
  }
  int out_arity = 0;
  for (const LinearMap* m : maps) {
    if (m != nullptr && m->dim() != t.dim()) throw ShapeError("apply_legs: map dimension mismatch");
    out_arity += m == nullptr ? 1 : m->out_arity();
  }
  const Key n = static_cast<Key>(t.dim());
  std::vector<Key> radix(static_cast<std::size_t>(k));
  for (int leg = 0; leg < k; ++leg) {
    radix[leg] = power(t.dim(), maps[leg] == nullptr ? 1 : maps[leg]->out_arity());
  }
  TensorBuilder acc(t.field(), t.dim(), out_arity);
  const std::vector<int> idx = decode_all(t);
  std::vector<std::vector<Entry>> images(static_cast<std::size_t>(k));
  std::vector<std::size_t> pos(static_cast<std::size_t>(k));
  for (std::size_t e = 0; e < t.nnz(); ++e) {
    bool vanishes = false;
    for (int leg = 0; leg < k; ++leg) {
      const int i = idx[e * k + leg];
      if (maps[leg] == nullptr) {
        images[leg].assign(1, Entry{static_cast<Key>(i), Scalar::one(t.field())});
      } else {
        images[leg] = maps[leg]->row(i);
      }
      if (images[leg].empty()) {
        vanishes = true;
        break;
      }
    }
    if (vanishes) continue;
    std::fill(pos.begin(), pos.end(), 0);
    while (true) {
      Key key = 0;
      Scalar c = t.entries()[e].value;
      for (int leg = 0; leg < k; ++leg) {
        const Entry& img = images[leg][pos[leg]];
        key = key * radix[leg] + img.key;
        c *= img.value;
      }
      acc.add(key, c);
      int leg = k - 1;
      while (leg >= 0 && ++pos[leg] == images[leg].size()) pos[leg--] = 0;
      if (leg < 0) break;
    }
  }
  (void)n;
  return std::move(acc).build();
}

SparseTensor apply_leg(const SparseTensor& t, int leg, const LinearMap& map) {
  if (leg < 0 || leg >= t.arity()) throw ShapeError("apply_leg: leg out of range");
  LegMaps maps(static_cast<std::size_t>(t.arity()), nullptr);
  maps[leg] = &map;
  return apply_legs(t, maps);
}

SparseTensor apply_all(const SparseTensor& t, const LinearMap& map) {
  return apply_legs(t, LegMaps(static_cast<std::size_t>(t.arity()), &map));
}

SparseTensor permute(const SparseTensor& t, std::span<const int> perm) {
  const int k = t.arity();
  if (static_cast<int>(perm.size()) != k) throw ShapeError("permute: wrong permutation length");
  std::vector<char> seen(static_cast<std::size_t>(k), 0);
  for (int p : perm) {
    if (p < 0 || p >= k || seen[p]) throw ShapeError("permute: not a permutation");
    seen[p] = 1;
  }
  TensorBuilder acc(t.field(), t.dim(), k);
  const std::vector<int> idx = decode_all(t);
  std::vector<int> out(static_cast<std::size_t>(k));
  for (std::size_t e = 0; e < t.nnz(); ++e) {
    for (int j = 0; j < k; ++j) out[j] = idx[e * k + perm[j]];
    acc.add(std::span<const int>(out), t.entries()[e].value);
  }
  return std::move(acc).build();
}

SparseTensor permute(const SparseTensor& t, std::initializer_list<int> perm) {
  return permute(t, std::span<const int>(perm.begin(), perm.size()));
}

SparseTensor flip(const SparseTensor& t, int i, int j) {
  const int k = t.arity();
  if (i == j || i < 0 || j < 0 || i >= k || j >= k) throw ShapeError("flip: invalid legs");
  std::vector<int> perm(static_cast<std::size_t>(k));
  for (int l = 0; l < k; ++l) perm[l] = l;
  std::swap(perm[i], perm[j]);
  return permute(t, std::span<const int>(perm));
}

SparseTensor concat(const SparseTensor& a, const SparseTensor& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("concat: tensors over different fields");
  if (a.dim() != b.dim()) throw ShapeError("concat: tensors over different algebras");
  TensorBuilder acc(a.field(), a.dim(), a.arity() + b.arity());
  const Key shift = b.slots();
  for (const Entry& x : a.entries()) {
    for (const Entry& y : b.entries()) acc.add(x.key * shift + y.key, x.value * y.value);
  }
  return std::move(acc).build();
}

SparseTensor invert(const Algebra& algebra, const SparseTensor& t) {
  const int k = t.arity();
  if (t.is_zero()) throw NotInvertible("zero tensor is not invertible");
  if (k == 0) return SparseTensor::constant(t.scalar_value().inverse(), t.dim());
  const Key slots = t.slots();
  if (slots > (Key{1} << 16)) throw NotInvertible("invert: tensor space too large for exact solve");
  const int ncols = static_cast<int>(slots);
  std::vector<linalg::SparseRow> rows(slots);
  SparseTensor basis_tensor(t.field(), t.dim(), k);
  for (int c = 0; c < ncols; ++c) {
    TensorBuilder b(t.field(), t.dim(), k);
    b.add(static_cast<Key>(c), Scalar::one(t.field()));
    SparseTensor column = mult(algebra, t, std::move(b).build());
    for (const Entry& e : column.entries()) rows[e.key].emplace_back(c, e.value);
  }
  const SparseTensor one = algebra.one(k);
  std::vector<Scalar> rhs(slots, Scalar::zero(t.field()));
  for (const Entry& e : one.entries()) rhs[e.key] = e.value;
  auto x = linalg::solve_unique(std::move(rows), ncols, rhs, t.field());
  if (!x) throw NotInvertible("left multiplication operator is singular");
  TensorBuilder b(t.field(), t.dim(), k);
  for (int c = 0; c < ncols; ++c) b.add(static_cast<Key>(c), (*x)[c]);
  SparseTensor inv = std::move(b).build();
  if (mult(algebra, t, inv) != one || mult(algebra, inv, t) != one) {
    throw NotInvertible("right inverse is not a left inverse");
  }
  return inv;
}

SparseTensor fold(const Algebra& algebra, const SparseTensor& t, const FoldSpec& spec) {
  const int k = t.arity();
  std::vector<int> uses(static_cast<std::size_t>(k), 0);
  for (const auto& group : spec) {
    if (group.empty()) throw ShapeError("fold: empty output leg");
    for (const Factor& f : group) {
      if (f.element != nullptr) {
        if (f.element->arity() != 1 || f.element->dim() != t.dim()) {
          throw ArityMismatch("fold: constant factor must be an element of A");
        }
      } else if (f.leg < 0 || f.leg >= k) {
        throw ShapeError("fold: leg out of range");
      } else {
        ++uses[f.leg];
      }
    }
  }
  for (int u : uses) {
    if (u != 1) throw ShapeError("fold: every input leg must be used exactly once");
  }
  std::vector<ElementVec> constants;
  std::vector<std::vector<const ElementVec*>> resolved(spec.size());
  constants.reserve(k + 16);
  for (const auto& group : spec) {
    for (const Factor& f : group) {
      if (f.element != nullptr) constants.push_back(to_vec(*f.element));
    }
  }
  const int out_arity = static_cast<int>(spec.size());
  TensorBuilder acc(t.field(), t.dim(), out_arity);
  VecMultiplier vm(algebra);
  const std::vector<int> idx = decode_all(t);
  std::vector<ElementVec> legs_out(spec.size());
  std::vector<std::size_t> pos(spec.size());
  for (std::size_t e = 0; e < t.nnz(); ++e) {
    std::size_t next_constant = 0;
    bool vanishes = false;
    for (std::size_t g = 0; g < spec.size() && !vanishes; ++g) {
      ElementVec cur;
      bool first = true;
      for (const Factor& f : spec[g]) {
        ElementVec factor;
        const ElementVec* fp;
        if (f.element != nullptr) {
          fp = &constants[next_constant++];
        } else {
          factor.emplace_back(idx[e * k + f.leg], Scalar::one(t.field()));
          fp = &factor;
        }
        if (first) {
          cur = *fp;
          first = false;
        } else {
          cur = vm.mul(cur, *fp);
        }
        if (cur.empty()) break;
      }
      if (cur.empty()) vanishes = true;
      legs_out[g] = std::move(cur);
    }
    if (vanishes) continue;
    std::fill(pos.begin(), pos.end(), 0);
    while (true) {
      Key key = 0;
      Scalar c = t.entries()[e].value;
      for (std::size_t g = 0; g < spec.size(); ++g) {
        const auto& [i, v] = legs_out[g][pos[g]];
        key = key * static_cast<Key>(t.dim()) + static_cast<Key>(i);
        c *= v;
      }
      acc.add(key, c);
      int g = out_arity - 1;
      while (g >= 0 && ++pos[g] == legs_out[g].size()) pos[g--] = 0;
      if (g < 0) break;
    }
  }
  return std::move(acc).build();
}

SparseTensor sandwich(const Algebra& algebra, const SparseTensor& p, const SparseTensor& m) {
  const int k = m.arity();
  if (p.arity() != 2 * k) throw ArityMismatch("sandwich: outer tensor must have twice the arity");
  if (p.dim() != m.dim() || !(p.field() == m.field())) throw ShapeError("sandwich: shape mismatch");
  const Key half = m.slots();
  TensorBuilder acc(m.field(), m.dim(), k);
  const auto& es = p.entries();
  for (std::size_t i = 0; i < es.size();) {
    const Key left = es[i].key / half;
    TensorBuilder right(m.field(), m.dim(), k);
    std::size_t j = i;
    for (; j < es.size() && es[j].key / half == left; ++j) right.add(es[j].key % half, es[j].value);
    TensorBuilder l(m.field(), m.dim(), k);
    l.add(left, Scalar::one(m.field()));
    const SparseTensor lm = mult(algebra, std::move(l).build(), m);
    mult_into(acc, algebra, lm, std::move(right).build());
    i = j;
  }
  return std::move(acc).build();
}

SparseTensor multiply_legs(const Algebra& algebra, const SparseTensor& t,
                           std::span<const int> group_sizes) {
  FoldSpec spec;
  int next = 0;
  for (int size : group_sizes) {
    if (size <= 0) throw ShapeError("multiply_legs: group sizes must be positive");
    std::vector<Factor> group;
    for (int i = 0; i < size; ++i) group.push_back(leg(next++));
    spec.push_back(std::move(group));
  }
  if (next != t.arity()) throw ArityMismatch("multiply_legs: group sizes must sum to the arity");
  return fold(algebra, t, spec);
}

}  // namespace qhopf
