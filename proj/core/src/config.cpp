#include "freecert/config.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace freecert {

std::uint64_t RunConfig::effective_seed() const {
  const char* env = std::getenv("FREECERT_SEED");
  if (env == nullptr || *env == '\0') return seed;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0')
    throw std::runtime_error("FREECERT_SEED is not an unsigned integer: " +
                             std::string(env));
  return static_cast<std::uint64_t>(v);
}

}  // namespace freecert
