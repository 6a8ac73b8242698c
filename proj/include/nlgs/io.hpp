#ifndef NLGS_IO_HPP
#define NLGS_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlgs/grid.hpp"
#include "nlgs/integrator.hpp"

namespace nlgs {

class NonlocalOperator;
struct RhoProfile;

struct Snapshot {
    Field field;
    double time = 0.0;
    std::string name;
};

/// One-line JSON header {dim, extents, counts, time, name} and a newline,
/// followed by the values as little-endian IEEE-754 float64 in row-major order.
void write_snapshot(std::ostream& os, const Field& field, double time, const std::string& name);
void write_snapshot(const std::filesystem::path& path, const Field& field, double time, const std::string& name);
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Header plus one line per MonitorRow.
void write_monitor_csv(std::ostream& os, const std::vector<MonitorRow>& rows);

/// (t, Y_u, Y_v, Lambda_u, sup_u, sup_v, L2_u, L2_v) at every snapshot.
void write_diagnostics_csv(std::ostream& os, const std::vector<State>& snapshots, const NonlocalOperator& op,
                           const RhoProfile& rho);

/// Shortest round-trip decimal representation.
std::string format_double(double x);

} // namespace nlgs

#endif
