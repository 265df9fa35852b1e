#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fdw/field.hpp"
#include "fdw/solver.hpp"

namespace fdw {

/// Header of the trajectory table, one row per recorded time.
inline constexpr const char* kTrajectoryHeader = "t,l2,linf,hs,weighted_alpha,energy";

std::string trajectory_csv(const std::vector<NormRow>& rows);
void write_trajectory_csv(const std::vector<NormRow>& rows, const std::filesystem::path& path);
std::vector<NormRow> read_trajectory_csv(const std::filesystem::path& path);

/// Field samples as "x1[,x2[,x3]],value" rows in grid order.
std::string field_csv(const RealField& f);
void write_field_csv(const RealField& f, const std::filesystem::path& path);
/// Reads a field written by write_field_csv; the grid is inferred from the
/// coordinates.  Throws InvalidInput naming the offending line.
RealField read_field_csv(const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace fdw
