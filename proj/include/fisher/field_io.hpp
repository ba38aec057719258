#ifndef FISHER_FIELD_IO_HPP_
#define FISHER_FIELD_IO_HPP_

#include <string>
#include <vector>

#include "fisher/grid.hpp"

namespace fisher {

/// 17-significant-digit text form of a double (round-trips exactly).
std::string fmt17(double x);

/// Snapshot file: header "n points_per_axis lengths time", then row-major
/// values, one per line, 17 significant digits.
void write_snapshot(const std::string& path, const ScalarField& f, double time);

struct Snapshot {
  ScalarField field;
  double time;
};

Snapshot read_snapshot(const std::string& path);

/// Archive: one snapshot file per sample plus a manifest with lines
/// "index time filename".
void write_trajectory_archive(const std::string& dir, const std::vector<double>& times,
                              const std::vector<ScalarField>& fields);

struct ArchivedTrajectory {
  std::vector<double> times;
  std::vector<ScalarField> fields;
};

ArchivedTrajectory read_trajectory_archive(const std::string& dir);

}  // namespace fisher

#endif  // FISHER_FIELD_IO_HPP_
