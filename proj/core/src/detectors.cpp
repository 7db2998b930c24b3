#include "condphoton/detectors.hpp"

#include <charconv>

#include "condphoton/errors.hpp"

namespace condphoton {

DetectorModel::DetectorModel(DetectorFlavor flavor, unsigned k)
    : flavor_(flavor), k_(k) {
  if (k_ == 0) {
    throw DomainError("detector threshold k must be >= 1");
  }
}

int DetectorModel::upsilon(unsigned l) const {
  if (l < k_) return 0;
  return flavor_ == DetectorFlavor::resolving ? (l == k_ ? 1 : 0) : 1;
}

std::string DetectorModel::to_string() const {
  return std::string(is_resolving() ? "r:" : "n:") + std::to_string(k_);
}

DetectorModel DetectorModel::parse(const std::string& text) {
  if (text.size() < 3 || text[1] != ':' || (text[0] != 'r' && text[0] != 'n')) {
    throw DomainError("detector must be spelled r:K or n:K, got '" + text + "'");
  }
  unsigned k = 0;
  const char* first = text.data() + 2;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, k);
  if (ec != std::errc() || ptr != last) {
    throw DomainError("detector threshold is not an integer in '" + text + "'");
  }
  return {text[0] == 'r' ? DetectorFlavor::resolving : DetectorFlavor::nonresolving,
          k};
}

}  // namespace condphoton
