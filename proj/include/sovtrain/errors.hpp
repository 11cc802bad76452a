#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sovtrain {

/// An input violates a type invariant or operation precondition.
/// `field()` names the offending quantity (e.g. "mfu", "n_gpus").
class DomainError : public std::invalid_argument {
 public:
  DomainError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A scenario names a hardware or country profile that is not registered.
class ReferenceError : public std::runtime_error {
 public:
  ReferenceError(std::string kind, std::string id)
      : std::runtime_error("unresolved " + kind + " reference '" + id + "'"),
        kind_(std::move(kind)),
        id_(std::move(id)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::string& id() const noexcept { return id_; }

 private:
  std::string kind_;
  std::string id_;
};

/// Sweep grid exceeds the configured cell cap.
class SweepTooLarge : public std::length_error {
 public:
  SweepTooLarge(std::size_t cells, std::size_t cap)
      : std::length_error("sweep product of " + std::to_string(cells) +
                          " cells exceeds cap of " + std::to_string(cap)),
        cells_(cells),
        cap_(cap) {}

  std::size_t cells() const noexcept { return cells_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cells_;
  std::size_t cap_;
};

}  // namespace sovtrain
