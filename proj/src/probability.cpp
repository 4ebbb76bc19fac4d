#include "monogamy/probability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "monogamy/error.hpp"

namespace monogamy {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownObservable: return "UnknownObservable";
    case ErrorCode::DuplicateObservable: return "DuplicateObservable";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::Incompatible: return "Incompatible";
    case ErrorCode::MissingResponse: return "MissingResponse";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::AsymmetricState: return "AsymmetricState";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::NonTransitive: return "NonTransitive";
    case ErrorCode::NoGroundState: return "NoGroundState";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::size_t scope_volume(std::span<const ObservableDecl> scope) {
  std::unordered_set<std::string_view> seen;
  std::size_t volume = 1;
  for (const auto& obs : scope) {
    if (obs.k == 0) fail(ErrorCode::InvalidArgument, "observable '" + obs.id + "' has an empty alphabet");
    if (!seen.insert(obs.id).second) fail(ErrorCode::DuplicateObservable, "duplicate observable id '" + obs.id + "'");
    if (volume > kMaxTableEntries / obs.k) {
      fail(ErrorCode::CapExceeded, "table over " + std::to_string(scope.size()) +
                                       " observables exceeds the dense cap of 2^24 entries");
    }
    volume *= obs.k;
  }
  return volume;
}

DistTable::DistTable(Scope scope, std::vector<double> values)
    : scope_(std::move(scope)), values_(std::move(values)) {
  const std::size_t volume = scope_volume(scope_);
  if (values_.size() != volume) {
    std::ostringstream msg;
    msg << "table has " << values_.size() << " entries, scope requires " << volume;
    fail(ErrorCode::DimensionMismatch, msg.str());
  }
  double total = 0.0;
  for (double& v : values_) {
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "non-finite probability entry");
    if (v < 0.0) {
      if (v < -kIdentityTolerance) fail(ErrorCode::InvalidArgument, "negative probability entry");
      v = 0.0;
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kIngestTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "table mass " << total << " differs from 1";
    fail(ErrorCode::NotNormalized, msg.str());
  }
}

DistTable DistTable::uniform(Scope scope) {
  const std::size_t volume = scope_volume(scope);
  return DistTable(std::move(scope), std::vector<double>(volume, 1.0 / static_cast<double>(volume)));
}

DistTable DistTable::point_mass(Scope scope, std::span<const std::size_t> outcome) {
  const std::size_t volume = scope_volume(scope);
  if (outcome.size() != scope.size()) fail(ErrorCode::DimensionMismatch, "outcome rank differs from scope rank");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < scope.size(); ++i) {
    if (outcome[i] >= scope[i].k) fail(ErrorCode::InvalidArgument, "outcome out of alphabet range");
    flat = flat * scope[i].k + outcome[i];
  }
  std::vector<double> values(volume, 0.0);
  values[flat] = 1.0;
  return DistTable(std::move(scope), std::move(values));
}

std::vector<std::size_t> DistTable::strides() const {
  std::vector<std::size_t> s(scope_.size(), 1);
  for (std::size_t i = scope_.size(); i-- > 1;) s[i - 1] = s[i] * scope_[i].k;
  return s;
}

std::size_t DistTable::flat_index(std::span<const std::size_t> outcome) const {
  if (outcome.size() != scope_.size()) fail(ErrorCode::DimensionMismatch, "outcome rank differs from scope rank");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < scope_.size(); ++i) {
    if (outcome[i] >= scope_[i].k) fail(ErrorCode::InvalidArgument, "outcome out of alphabet range");
    flat = flat * scope_[i].k + outcome[i];
  }
  return flat;
}

double DistTable::at(std::span<const std::size_t> outcome) const { return values_[flat_index(outcome)]; }

bool DistTable::contains(std::string_view id) const noexcept {
  return std::any_of(scope_.begin(), scope_.end(), [&](const ObservableDecl& o) { return o.id == id; });
}

std::size_t DistTable::position(std::string_view id) const {
  for (std::size_t i = 0; i < scope_.size(); ++i) {
    if (scope_[i].id == id) return i;
  }
  fail(ErrorCode::UnknownObservable, "observable '" + std::string(id) + "' not in table scope");
}

std::vector<std::string> DistTable::ids() const {
  std::vector<std::string> out;
  out.reserve(scope_.size());
  for (const auto& o : scope_) out.push_back(o.id);
  return out;
}

void decode_outcome(std::size_t flat, std::span<const ObservableDecl> scope, std::span<std::size_t> outcome) {
  for (std::size_t i = scope.size(); i-- > 0;) {
    outcome[i] = flat % scope[i].k;
    flat /= scope[i].k;
  }
}

DistTable project(const DistTable& table, std::span<const std::string> ids) {
  const auto& scope = table.scope();
  std::vector<std::size_t> positions;
  positions.reserve(ids.size());
  Scope out_scope;
  for (const auto& id : ids) {
    const std::size_t p = table.position(id);
    if (std::find(positions.begin(), positions.end(), p) != positions.end()) {
      fail(ErrorCode::DuplicateObservable, "observable '" + id + "' requested twice");
    }
    positions.push_back(p);
    out_scope.push_back(scope[p]);
  }

  // Output stride contributed by each input axis (0 for summed-out axes).
  std::vector<std::size_t> axis_stride(scope.size(), 0);
  {
    std::size_t s = 1;
    for (std::size_t i = positions.size(); i-- > 0;) {
      axis_stride[positions[i]] = s;
      s *= scope[positions[i]].k;
    }
  }

  std::vector<double> out(scope_volume(out_scope), 0.0);
  std::vector<std::size_t> digits(scope.size(), 0);
  std::size_t out_index = 0;
  for (double v : table.values()) {
    out[out_index] += v;
    // Odometer increment, last axis fastest.
    for (std::size_t i = scope.size(); i-- > 0;) {
      if (++digits[i] < scope[i].k) {
        out_index += axis_stride[i];
        break;
      }
      out_index -= axis_stride[i] * (scope[i].k - 1);
      digits[i] = 0;
    }
  }
  return DistTable(std::move(out_scope), std::move(out));
}

DistTable marginalize(const DistTable& table, std::span<const std::string> keep) {
  for (const auto& id : keep) table.position(id);
  std::vector<std::string> ordered;
  for (const auto& obs : table.scope()) {
    if (std::find(keep.begin(), keep.end(), obs.id) != keep.end()) ordered.push_back(obs.id);
  }
  if (ordered.size() != keep.size()) fail(ErrorCode::DuplicateObservable, "keep list repeats an observable");
  return project(table, ordered);
}

DistTable product_extension(std::span<const DistTable> singles) {
  Scope scope;
  for (const auto& s : singles) {
    if (s.rank() != 1) fail(ErrorCode::InvalidArgument, "product_extension expects single-observable tables");
    scope.push_back(s.scope().front());
  }
  const std::size_t volume = scope_volume(scope);
  std::vector<double> values(1, 1.0);
  values.reserve(volume);
  for (const auto& s : singles) {
    std::vector<double> next;
    next.reserve(values.size() * s.size());
    for (double prefix : values) {
      for (double p : s.values()) next.push_back(prefix * p);
    }
    values = std::move(next);
  }
  return DistTable(std::move(scope), std::move(values));
}

bool compatible(const DistTable& a, const DistTable& b, double tol) {
  std::vector<std::string> shared;
  for (const auto& obs : a.scope()) {
    if (b.contains(obs.id)) {
      if (b.scope()[b.position(obs.id)].k != obs.k) return false;
      shared.push_back(obs.id);
    }
  }
  if (shared.empty()) return true;
  const DistTable ma = project(a, shared);
  const DistTable mb = project(b, shared);
  return max_abs_difference(ma, mb) <= tol;
}

double max_abs_difference(const DistTable& a, const DistTable& b) {
  if (a.scope() != b.scope()) fail(ErrorCode::DimensionMismatch, "tables have different scopes");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  return worst;
}

}  // namespace monogamy
