#include <set>
#include <string>

#include "supercong/conjdsl.hpp"

namespace supercong {

namespace detail {
extern const std::pair<std::string_view, std::string_view> embedded_registry[];
extern const std::size_t embedded_registry_count;
}  // namespace detail

std::span<const std::pair<std::string_view, std::string_view>> registry_files() {
  return {detail::embedded_registry, detail::embedded_registry_count};
}

const std::vector<ConjectureSpec>& builtin_registry() {
  static const std::vector<ConjectureSpec> specs = [] {
    std::vector<ConjectureSpec> all;
    std::set<std::string> ids;
    for (auto [name, text] : registry_files()) {
      std::vector<ConjectureSpec> part = parse_registry(text, name);
      for (ConjectureSpec& spec : part) {
        if (!ids.insert(spec.id).second)
          throw parse_error(std::string(name), 0, 0,
                            "duplicate entry id \"" + spec.id + "\"");
        all.push_back(std::move(spec));
      }
    }
    return all;
  }();
  return specs;
}

}  // namespace supercong
