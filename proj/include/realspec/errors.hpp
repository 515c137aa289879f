#pragma once

#include <stdexcept>
#include <string>

namespace realspec {

enum class Violation { NotACover, NotASection, NotLocallyFractional, OutOfDomain, Unsupported };

inline const char* to_string(Violation v) {
    switch (v) {
        case Violation::NotACover:
            return "NotACover";
        case Violation::NotASection:
            return "NotASection";
        case Violation::NotLocallyFractional:
            return "NotLocallyFractional";
        case Violation::OutOfDomain:
            return "OutOfDomain";
        case Violation::Unsupported:
            return "Unsupported";
    }
    return "Unknown";
}

/// An operation was called outside its precondition. Math domain errors
/// (division by zero, gcd(0, 0), ...) are std::domain_error instead.
class precondition_error : public std::logic_error {
   public:
    precondition_error(Violation v, const std::string& what)
        : std::logic_error(std::string(to_string(v)) + ": " + what), violation_(v) {}
    [[nodiscard]] Violation violation() const noexcept { return violation_; }

   private:
    Violation violation_;
};

}  // namespace realspec
