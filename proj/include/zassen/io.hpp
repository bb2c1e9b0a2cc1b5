#pragma once

// JSON forms of systems, groups, group specs and reports, the element word
// parser, and the on-disk workspace.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "zassen/groupspec.hpp"
#include "zassen/verifier.hpp"

namespace zassen {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "zassen-report/1";

Json to_json(const MultSystem& s);
MultSystem system_from_json(const Json& j);

Json to_json(const GroupSpec& s);
GroupSpec spec_from_json(const Json& j);

Json to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);

Json to_json(const Filtration& f);
Filtration filtration_from_json(const FiniteGroup& g, const Json& j);

Json to_json(const VerificationReport& r, const FiniteGroup& g);
/// The report without its timing block, for byte comparisons.
std::string canonical_dump(const Json& report);
std::string render_text(const VerificationReport& r);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv_hex(std::string_view data);
std::string hex64(std::uint64_t v);

/// Words over the generator labels: products (with '*' or juxtaposition),
/// powers a^k with k possibly negative, commutators [a,b] = a^-1 b^-1 a b,
/// parentheses, and "1". Throws ErrorKind::Parse.
Elem parse_word(const FiniteGroup& g, std::string_view word);

/// groups/, systems/, reports/ with content-addressed file names.
class Workspace {
 public:
  explicit Workspace(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }
  /// Stores the spec, table and filtration; returns the group id.
  std::string store_group(const BuiltGroup& g, const Filtration& f);
  /// Rebuilds from the stored spec; throws ErrorKind::UnknownId, and
  /// ErrorKind::Contract when the rebuilt group or filtration differs from the stored one.
  BuiltGroup load_group(const std::string& id, Filtration* cached_filtration = nullptr) const;
  std::string store_system(const MultSystem& s);
  std::string store_report(const Json& report);
  /// Writes `content` under `sub/` with a name derived from its hash; returns the path.
  std::filesystem::path store(const std::string& sub, const std::string& prefix, const std::string& content);

 private:
  std::filesystem::path root_;
};

}  // namespace zassen
