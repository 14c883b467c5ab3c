#ifndef CONF4_CONFIG_HPP
#define CONF4_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conf4/geometry.hpp"
#include "conf4/paneitz.hpp"
#include "conf4/solver.hpp"

namespace conf4 {

/// Flat sectioned key-value text: `[section]` headers, `key = value`
/// lines, `#` comments. Values are scalars or comma-separated lists.
class ConfigFile {
  public:
    static ConfigFile parse(const std::string& text);
    static ConfigFile parse_file(const std::string& path);

    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string_or(const std::string& section, const std::string& key,
                              const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key) const;
    int get_int_or(const std::string& section, const std::string& key, int fallback) const;
    std::vector<double> get_doubles(const std::string& section, const std::string& key) const;

  private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// [background] section -> Background (kind = round_s4 | s1xs3 |
/// product_surfaces | constants_only).
Background load_background(const ConfigFile& cfg);

/// [solve] section -> SolveConfig (all keys optional, defaults apply).
SolveConfig load_solve_config(const ConfigFile& cfg);

struct ReducedSpectrumRequest {
    int grid_n = 128;
    double circumference = 6.283185307179586476925286766559;
};

struct SpectrumRequest {
    std::optional<ProductSpectrumInput> product;
    std::optional<ReducedSpectrumRequest> reduced;
};

/// [spectrum] section (kind = product | reduced).
SpectrumRequest load_spectrum_request(const ConfigFile& cfg);

DerivScheme scheme_from_string(const std::string& name);

}  // namespace conf4

#endif
