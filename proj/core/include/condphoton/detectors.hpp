#pragma once

#include <string>

namespace condphoton {

enum class DetectorFlavor { resolving, nonresolving };

/// k-photon detector POVM M_k = sum_{l >= k} Upsilon_l |l><l|.
///
/// A resolving detector clicks iff exactly k photons arrive, a nonresolving
/// one iff at least k arrive. The single-photon on/off detector is
/// `DetectorModel::nonresolving(1)`.
class DetectorModel {
 public:
  DetectorModel(DetectorFlavor flavor, unsigned k);

  static DetectorModel resolving(unsigned k) { return {DetectorFlavor::resolving, k}; }
  static DetectorModel nonresolving(unsigned k) {
    return {DetectorFlavor::nonresolving, k};
  }

  DetectorFlavor flavor() const { return flavor_; }
  unsigned k() const { return k_; }
  bool is_resolving() const { return flavor_ == DetectorFlavor::resolving; }

  /// Acceptance weight Upsilon_l in {0, 1}.
  int upsilon(unsigned l) const;

  /// "r:K" or "n:K".
  std::string to_string() const;
  static DetectorModel parse(const std::string& text);

  friend bool operator==(const DetectorModel&, const DetectorModel&) = default;

 private:
  DetectorFlavor flavor_;
  unsigned k_;
};

inline int upsilon(const DetectorModel& d, unsigned l) { return d.upsilon(l); }

}  // namespace condphoton
