#include "fisher/field_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fisher {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_snapshot(const std::string& path, const ScalarField& f, double time) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << f.grid.n;
  for (int a = 0; a < f.grid.n; ++a) out << ' ' << f.grid.pts[a];
  for (int a = 0; a < f.grid.n; ++a) out << ' ' << fmt17(f.grid.len[a]);
  out << ' ' << fmt17(time) << '\n';
  for (double x : f.v) out << fmt17(x) << '\n';
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  int n = 0;
  hs >> n;
  if (n < 1 || n > 3) throw std::runtime_error("bad snapshot header in " + path);
  std::vector<int> pts(n);
  std::vector<double> len(n);
  for (int a = 0; a < n; ++a) hs >> pts[a];
  for (int a = 0; a < n; ++a) hs >> len[a];
  double time = 0.0;
  hs >> time;
  Snapshot s{{make_grid(pts, len), {}}, time};
  s.field.v.resize(size_t(s.field.grid.total()));
  for (double& x : s.field.v)
    if (!(in >> x)) throw std::runtime_error("truncated snapshot " + path);
  return s;
}

void write_trajectory_archive(const std::string& dir, const std::vector<double>& times,
                              const std::vector<ScalarField>& fields) {
  std::filesystem::create_directories(dir);
  std::ofstream manifest(dir + "/manifest.txt");
  for (size_t i = 0; i < times.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "snap_%04zu.txt", i);
    write_snapshot(dir + "/" + name, fields[i], times[i]);
    manifest << i << ' ' << fmt17(times[i]) << ' ' << name << '\n';
  }
}

ArchivedTrajectory read_trajectory_archive(const std::string& dir) {
  std::ifstream manifest(dir + "/manifest.txt");
  if (!manifest) throw std::runtime_error("cannot open " + dir + "/manifest.txt");
  ArchivedTrajectory out;
  std::string line;
  while (std::getline(manifest, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    size_t index;
    double time;
    std::string name;
    if (!(ss >> index >> time >> name))
      throw std::runtime_error("bad manifest line in " + dir + ": " + line);
    Snapshot s = read_snapshot(dir + "/" + name);
    out.times.push_back(s.time);
    out.fields.push_back(std::move(s.field));
  }
  return out;
}

}  // namespace fisher
