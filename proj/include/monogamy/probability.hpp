#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace monogamy {

/// Slack allowed on user-supplied tables (normalization).
inline constexpr double kIngestTolerance = 1e-9;
/// Slack for identities that hold exactly up to round-off.
inline constexpr double kIdentityTolerance = 1e-12;
/// Largest dense table we are willing to materialize.
inline constexpr std::size_t kMaxTableEntries = std::size_t{1} << 24;

struct ObservableDecl {
  std::string id;
  std::size_t k = 0;  // alphabet size

  friend bool operator==(const ObservableDecl&, const ObservableDecl&) = default;
};

using Scope = std::vector<ObservableDecl>;

/// Product of alphabet sizes; throws CapExceeded beyond kMaxTableEntries and
/// InvalidArgument on an empty alphabet or duplicate id.
std::size_t scope_volume(std::span<const ObservableDecl> scope);

/// Dense probability table over an ordered scope of finite-alphabet
/// observables. Storage is row-major with the first observable slowest.
///
/// Construction validates the table: entries >= -1e-12 (tiny negatives are
/// clamped to zero) and total mass within 1e-9 of one.
class DistTable {
 public:
  DistTable(Scope scope, std::vector<double> values);

  static DistTable uniform(Scope scope);
  static DistTable point_mass(Scope scope, std::span<const std::size_t> outcome);

  const Scope& scope() const noexcept { return scope_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t rank() const noexcept { return scope_.size(); }

  /// Row-major strides matching scope().
  std::vector<std::size_t> strides() const;
  std::size_t flat_index(std::span<const std::size_t> outcome) const;
  double at(std::span<const std::size_t> outcome) const;

  bool contains(std::string_view id) const noexcept;
  /// Position of `id` in scope(); throws UnknownObservable.
  std::size_t position(std::string_view id) const;
  std::vector<std::string> ids() const;

 private:
  Scope scope_;
  std::vector<double> values_;
};

/// Sum out every observable not in `keep`. The result lists the kept
/// observables in the order they appear in `table`, not in `keep`.
DistTable marginalize(const DistTable& table, std::span<const std::string> keep);

/// Like marginalize, but the result scope follows the order of `ids`.
DistTable project(const DistTable& table, std::span<const std::string> ids);

/// Outer product of single-observable tables with disjoint ids.
DistTable product_extension(std::span<const DistTable> singles);

/// Marginals onto the shared scope agree entrywise within `tol`. Vacuously
/// true when the scopes are disjoint.
bool compatible(const DistTable& a, const DistTable& b, double tol);

/// Largest entrywise deviation between two tables over the same scope.
double max_abs_difference(const DistTable& a, const DistTable& b);

/// Decode a flat row-major index into per-observable outcomes.
void decode_outcome(std::size_t flat, std::span<const ObservableDecl> scope,
                    std::span<std::size_t> outcome);

}  // namespace monogamy
