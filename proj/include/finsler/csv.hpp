#ifndef FINSLER_CSV_HPP
#define FINSLER_CSV_HPP

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "finsler/errors.hpp"

namespace finsler {

/// Scan table: `a,t_or_dt,value` rows followed by one `#`-prefixed summary
/// line. %.17g round-trip formatting, LF endings.
inline void write_scan_csv(const std::string& path, double a,
                           const std::vector<double>& t_or_dt,
                           const std::vector<double>& value, const std::string& summary) {
    if (t_or_dt.size() != value.size()) throw DomainError("write_scan_csv: column length mismatch");
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw Error("write_scan_csv: cannot open " + path);
    std::fputs("a,t_or_dt,value\n", fp);
    for (std::size_t i = 0; i < t_or_dt.size(); ++i)
        std::fprintf(fp, "%.17g,%.17g,%.17g\n", a, t_or_dt[i], value[i]);
    std::fprintf(fp, "# %s\n", summary.c_str());
    std::fclose(fp);
}

/// Sign-change interval list: `interval_start,interval_end` rows (possibly none).
inline void write_intervals_csv(const std::string& path,
                                const std::vector<std::pair<double, double>>& intervals) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw Error("write_intervals_csv: cannot open " + path);
    std::fputs("interval_start,interval_end\n", fp);
    for (const auto& [lo, hi] : intervals) std::fprintf(fp, "%.17g,%.17g\n", lo, hi);
    std::fclose(fp);
}

} // namespace finsler

#endif // FINSLER_CSV_HPP
