#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace semialg {

// Thrown when an exhaustive enumeration exceeds its configured budget.
// Callers distinguish this from a negative result: a capped search proves
// nothing. CLI maps it to exit code 3.
class cap_exceeded : public std::runtime_error {
  public:
    cap_exceeded(const std::string& what, std::uint64_t budget, std::uint64_t attempted)
        : std::runtime_error(what + " (budget " + std::to_string(budget) + ", attempted " +
                             std::to_string(attempted) + ")"),
          budget_(budget),
          attempted_(attempted) {}

    std::uint64_t budget() const noexcept { return budget_; }
    std::uint64_t attempted() const noexcept { return attempted_; }

  private:
    std::uint64_t budget_;
    std::uint64_t attempted_;
};

constexpr std::uint64_t kDefaultCap = 10'000'000;  // candidate evaluations

}  // namespace semialg
