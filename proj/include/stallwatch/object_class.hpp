#ifndef STALLWATCH_OBJECT_CLASS_HPP
#define STALLWATCH_OBJECT_CLASS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace stallwatch {

enum class ObjectClass { horse = 0, person = 1 };

inline constexpr std::size_t kNumClasses = 2;
inline constexpr std::array<ObjectClass, kNumClasses> kAllClasses = {
    ObjectClass::horse, ObjectClass::person};

constexpr std::string_view to_string(ObjectClass c) {
  return c == ObjectClass::horse ? "horse" : "person";
}

std::optional<ObjectClass> parse_object_class(std::string_view s);

// Per-class detector probabilities for one box.
struct ClassScores {
  std::array<double, kNumClasses> values{};

  double& operator[](ObjectClass c) { return values[static_cast<std::size_t>(c)]; }
  double operator[](ObjectClass c) const { return values[static_cast<std::size_t>(c)]; }
  bool operator==(const ClassScores&) const = default;
};

}  // namespace stallwatch

#endif  // STALLWATCH_OBJECT_CLASS_HPP
