#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace adk {

/// An exact computation would need to enumerate more states than allowed.
/// `required` is the state count that tripped the limit (saturated at 2^63-1).
class budget_error : public std::runtime_error {
 public:
  budget_error(std::string what, std::uint64_t required, std::uint64_t allowed)
      : std::runtime_error(std::move(what)), required_(required), allowed_(allowed) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t allowed() const { return allowed_; }

 private:
  std::uint64_t required_;
  std::uint64_t allowed_;
};

/// A threshold family admits no triggering representation.  Carries the
/// witness: node, difference set A (as a mask over the node's in-neighbors)
/// and the negative coefficient that certifies the failure.
class not_ad_infinity_error : public std::runtime_error {
 public:
  not_ad_infinity_error(std::string what, int node, std::uint32_t a_mask,
                        std::string coefficient)
      : std::runtime_error(std::move(what)),
        node_(node),
        a_mask_(a_mask),
        coefficient_(std::move(coefficient)) {}

  int node() const { return node_; }
  std::uint32_t a_mask() const { return a_mask_; }
  const std::string& coefficient() const { return coefficient_; }

 private:
  int node_;
  std::uint32_t a_mask_;
  std::string coefficient_;
};

/// Graph contains a directed cycle.  `remaining_mask` holds the nodes that
/// could not be peeled (every one of them lies on or feeds a cycle).
class not_a_dag_error : public std::runtime_error {
 public:
  not_a_dag_error(std::string what, std::uint32_t remaining_mask)
      : std::runtime_error(std::move(what)), remaining_mask_(remaining_mask) {}

  std::uint32_t remaining_mask() const { return remaining_mask_; }

 private:
  std::uint32_t remaining_mask_;
};

/// Instance file rejected; `line` is 1-based, 0 when not tied to a line.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::string what, int line)
      : std::runtime_error(std::move(what)), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace adk
