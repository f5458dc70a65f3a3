#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crtrans/errors.hpp"

namespace crtrans {

/// Declared set of variables, split into a Z-block followed by a xi-block.
/// Every polynomial refers to exactly one universe.
class VarUniverse {
 public:
  VarUniverse(std::size_t z_count, std::size_t xi_count, std::vector<std::string> names)
      : z_count_(z_count), xi_count_(xi_count), names_(std::move(names)) {
    if (names_.size() != z_count_ + xi_count_)
      throw InvalidArgument("variable universe: name count does not match block sizes");
  }

  // Z1..Zm, XI1..XIm style universe for a hypersurface in C^m.
  static std::shared_ptr<const VarUniverse> hermitian(std::size_t m, const std::string& z_prefix = "Z",
                                                      const std::string& xi_prefix = "XI") {
    std::vector<std::string> names;
    names.reserve(2 * m);
    for (std::size_t j = 1; j <= m; ++j) names.push_back(z_prefix + std::to_string(j));
    for (std::size_t j = 1; j <= m; ++j) names.push_back(xi_prefix + std::to_string(j));
    return std::make_shared<const VarUniverse>(m, m, std::move(names));
  }

  std::size_t size() const { return z_count_ + xi_count_; }
  std::size_t z_count() const { return z_count_; }
  std::size_t xi_count() const { return xi_count_; }
  bool symmetric() const { return z_count_ == xi_count_; }

  bool is_z(std::size_t v) const { return v < z_count_; }
  bool is_xi(std::size_t v) const { return v >= z_count_ && v < size(); }

  // Index of the variable in the other block with the same position.
  std::size_t partner(std::size_t v) const {
    if (!symmetric()) throw InvalidArgument("variable universe is not symmetric");
    return is_z(v) ? v + z_count_ : v - z_count_;
  }
  std::size_t xi_index(std::size_t block_pos) const { return z_count_ + block_pos; }

  const std::string& name(std::size_t v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t v = 0; v < names_.size(); ++v)
      if (names_[v] == name) return v;
    return std::nullopt;
  }

  friend bool operator==(const VarUniverse& a, const VarUniverse& b) {
    return a.z_count_ == b.z_count_ && a.xi_count_ == b.xi_count_ && a.names_ == b.names_;
  }

 private:
  std::size_t z_count_;
  std::size_t xi_count_;
  std::vector<std::string> names_;
};

using Universe = std::shared_ptr<const VarUniverse>;

inline bool same_universe(const Universe& a, const Universe& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace crtrans
