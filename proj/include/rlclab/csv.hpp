#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace rlclab {

/// Numeric formatting used by every emitted table: 6 significant digits,
/// C locale, no scientific surprises for integers.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

/// Minimal CSV writer for a fixed schema: header first, then rows of
/// preformatted cells. Values never contain commas or quotes here, so no
/// escaping is needed.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void header(const std::vector<std::string>& names) { line(names); }

    void row(const std::vector<std::string>& cells) { line(cells); }

private:
    void line(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) {
                os_ << ',';
            }
            os_ << cells[i];
        }
        os_ << '\n';
    }

    std::ostream& os_;
};

}  // namespace rlclab
