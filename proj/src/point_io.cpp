#include "reebsweep/point_io.h"

#include "reebsweep/errors.h"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

namespace reebsweep {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view field) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    if (field.empty()) return std::nullopt;
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

}  // namespace

PointCloud parse_csv(std::string_view text) {
    PointCloud cloud;
    bool seen_row = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        const auto fields = split_fields(line);
        std::vector<double> coords;
        coords.reserve(fields.size());
        std::optional<std::size_t> bad;
        for (std::size_t k = 0; k < fields.size(); ++k) {
            auto v = parse_number(fields[k]);
            if (!v) {
                bad = k;
                break;
            }
            coords.push_back(*v);
        }
        const bool first_row = !seen_row;
        seen_row = true;
        if (bad) {
            if (first_row) continue;  // header
            throw InputError("line " + std::to_string(line_no) + ": field " + std::to_string(*bad + 1) +
                             " ('" + std::string(trim(fields[*bad])) + "') is not a finite number");
        }
        if (cloud.dim == 0) cloud.dim = coords.size();
        if (coords.size() != cloud.dim) {
            throw InputError("line " + std::to_string(line_no) + ": " + std::to_string(coords.size()) +
                             " columns, expected " + std::to_string(cloud.dim));
        }
        cloud.points.push_back({static_cast<PointId>(cloud.points.size()), std::move(coords)});
    }
    return cloud;
}

PointCloud parse_points_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_array()) throw InputError("JSON points must be an array of coordinate arrays");
    PointCloud cloud;
    for (std::size_t row = 0; row < j.size(); ++row) {
        const auto& entry = j[row];
        const std::string where = "point " + std::to_string(row);
        if (!entry.is_array() || entry.empty()) throw InputError(where + ": expected a nonempty array");
        std::vector<double> coords;
        for (const auto& v : entry) {
            if (!v.is_number()) throw InputError(where + ": coordinates must be numbers");
            const double x = v.get<double>();
            if (!std::isfinite(x)) throw InputError(where + ": coordinate is not finite");
            coords.push_back(x);
        }
        if (cloud.dim == 0) cloud.dim = coords.size();
        if (coords.size() != cloud.dim) {
            throw InputError(where + ": " + std::to_string(coords.size()) + " coordinates, expected " +
                             std::to_string(cloud.dim));
        }
        cloud.points.push_back({static_cast<PointId>(row), std::move(coords)});
    }
    return cloud;
}

PointCloud read_points(std::istream& in, PointFormat format) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) throw InputError("failed to read point input");
    if (format == PointFormat::json) {
        if (trim(text).empty()) return {};
        return parse_points_json(text);
    }
    return parse_csv(text);
}

PointCloud load_points(const std::string& path, PointFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    return read_points(in, format);
}

PointFormat guess_format(const std::string& path) {
    const std::string ext = ".json";
    if (path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0) {
        return PointFormat::json;
    }
    return PointFormat::csv;
}

}  // namespace reebsweep
