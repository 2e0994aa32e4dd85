#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "json.hpp"
#include "qhopf/tensor.hpp"

namespace qhopf {

enum class Level { bialgebra, hopf, qt, ribbon };

std::string to_string(Level level);
Level parse_level(std::string_view text);

/// Raw components of a quasi-Hopf datum. Plain data; QuasiHopfDatum checks
/// shapes when it takes ownership.
struct DatumParts {
  Algebra algebra;
  LinearMap delta;     // A -> A⊗A
  LinearMap epsilon;   // A -> K, out_arity 0
  SparseTensor phi;
  LinearMap antipode;
  SparseTensor alpha;
  SparseTensor beta;
  std::optional<SparseTensor> R;
  std::optional<SparseTensor> v;
  nlohmann::json metadata = nlohmann::json::object();
  // Known inverse of phi, checked before use.
  std::optional<SparseTensor> phi_inverse;
};

/// Immutable quasi-Hopf datum together with a lazily filled cache of derived
/// elements. Copies share the cache.
class QuasiHopfDatum {
 public:
  explicit QuasiHopfDatum(DatumParts parts);

  const DatumParts& parts() const noexcept { return *parts_; }
  const Field& field() const noexcept { return parts_->algebra.field(); }
  int dim() const noexcept { return parts_->algebra.dim(); }
  const Algebra& algebra() const noexcept { return parts_->algebra; }
  const LinearMap& delta() const noexcept { return parts_->delta; }
  const LinearMap& epsilon() const noexcept { return parts_->epsilon; }
  const SparseTensor& phi() const noexcept { return parts_->phi; }
  const LinearMap& antipode() const noexcept { return parts_->antipode; }
  const SparseTensor& alpha() const noexcept { return parts_->alpha; }
  const SparseTensor& beta() const noexcept { return parts_->beta; }
  bool has_R() const noexcept { return parts_->R.has_value(); }
  /// Throws MissingR.
  const SparseTensor& R() const;
  const std::optional<SparseTensor>& v() const noexcept { return parts_->v; }
  const nlohmann::json& metadata() const noexcept { return parts_->metadata; }

  /// Highest layer the datum claims: ribbon if v is present, qt if R is.
  Level top_level() const noexcept;

  // Elementary operations in A and A^{⊗k}.
  SparseTensor one(int arity = 1) const { return algebra().one(arity); }
  SparseTensor basis(int i) const { return SparseTensor::basis(field(), dim(), i); }
  SparseTensor mul(const SparseTensor& a, const SparseTensor& b) const;
  SparseTensor mul(std::initializer_list<std::reference_wrapper<const SparseTensor>> f) const;
  SparseTensor S(const SparseTensor& x) const { return apply_all(x, antipode()); }
  SparseTensor Sinv(const SparseTensor& x) const { return apply_all(x, antipode_inv()); }
  SparseTensor D(const SparseTensor& x) const { return delta()(x); }
  Scalar eps(const SparseTensor& x) const;
  SparseTensor inv(const SparseTensor& x) const { return invert(algebra(), x); }
  SparseTensor scalar(const Scalar& s, int arity = 1) const { return one(arity).scaled(s); }

  // Cached derived data.
  const SparseTensor& phi_inv() const;
  const LinearMap& antipode_inv() const;
  const SparseTensor& R_inv() const;
  const LinearMap& delta_cop() const;
  /// FNV-1a 64 of the canonical JSON serialization, 16 hex digits.
  const std::string& hash() const;

  /// Returns the cached value under `key`, computing it on first use.
  /// Concurrent readers share; the computation runs outside the lock.
  template <class T>
  const T& cached(const std::string& key, const std::function<T()>& compute) const {
    {
      std::shared_lock lock(cache_->mutex);
      auto it = cache_->slots.find(key);
      if (it != cache_->slots.end()) return *static_cast<const T*>(it->second.get());
    }
    auto value = std::make_shared<const T>(compute());
    std::unique_lock lock(cache_->mutex);
    auto [it, inserted] = cache_->slots.emplace(key, value);
    return *static_cast<const T*>(it->second.get());
  }

  /// Structural equality; metadata and hints are ignored.
  friend bool operator==(const QuasiHopfDatum& a, const QuasiHopfDatum& b);

 private:
  struct Cache {
    std::shared_mutex mutex;
    std::map<std::string, std::shared_ptr<const void>> slots;
  };

  std::shared_ptr<const DatumParts> parts_;
  std::shared_ptr<Cache> cache_;
};

/// Builds a linear map A -> A from a function on basis indices.
LinearMap map_from(const QuasiHopfDatum& d, const std::function<SparseTensor(int)>& image, int out_arity);

}  // namespace qhopf
