#pragma once

#include "reebsweep/geometry.h"

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace reebsweep {

struct PointCloud {
    /// 0 for an empty cloud.
    std::size_t dim = 0;
    std::vector<Point> points;
};

enum class PointFormat { csv, json };

/// One point per row, comma separated.  A non-numeric first row is taken as
/// a header; blank lines and lines starting with '#' are skipped.  Errors
/// name the offending line.
PointCloud parse_csv(std::string_view text);

/// A JSON array of equally long coordinate arrays.
PointCloud parse_points_json(std::string_view text);

PointCloud read_points(std::istream& in, PointFormat format);
PointCloud load_points(const std::string& path, PointFormat format);

/// csv unless the path ends in ".json".
PointFormat guess_format(const std::string& path);

}  // namespace reebsweep
