#include "reebsweep/cell_bound.h"

#include <charconv>
#include <vector>

namespace reebsweep {

std::string format_number(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<double> CellRange::sample_levels() const {
    std::vector<double> out;
    if (lo.finite() && lo.inclusive) out.push_back(lo.value);
    if (lo.finite() && hi.finite()) {
        out.push_back(0.5 * (lo.value + hi.value));
    } else if (lo.finite()) {
        out.push_back(lo.value + 1.0);
    } else if (hi.finite()) {
        out.push_back(hi.value - 1.0);
    } else {
        out.push_back(0.0);
    }
    if (hi.finite() && hi.inclusive && !(lo == hi)) out.push_back(hi.value);
    return out;
}

std::string CellRange::to_string() const {
    std::string s = lo.inclusive ? "[" : "(";
    s += format_number(lo.value);
    s += ",";
    s += format_number(hi.value);
    s += hi.inclusive ? "]" : ")";
    return s;
}

}  // namespace reebsweep
