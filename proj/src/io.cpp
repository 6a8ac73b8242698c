#include "nlgs/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "nlgs/nonlocal_operator.hpp"

namespace nlgs {

namespace {

void put_le(std::ostream& os, double x) {
    auto bits = std::bit_cast<std::uint64_t>(x);
    char bytes[8];
    for (int b = 0; b < 8; ++b) {
        bytes[b] = static_cast<char>(bits & 0xffu);
        bits >>= 8;
    }
    os.write(bytes, 8);
}

double get_le(const unsigned char* bytes) {
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b)
        bits = (bits << 8) | bytes[b];
    return std::bit_cast<double>(bits);
}

} // namespace

std::string format_double(double x) {
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

void write_snapshot(std::ostream& os, const Field& field, double time, const std::string& name) {
    const Grid& g = field.grid();
    nlohmann::json header;
    header["dim"] = g.dim();
    header["extents"] = g.dim() == 1 ? nlohmann::json::array({g.extents()[0]})
                                     : nlohmann::json::array({g.extents()[0], g.extents()[1]});
    header["counts"] = g.dim() == 1 ? nlohmann::json::array({g.counts()[0]})
                                    : nlohmann::json::array({g.counts()[0], g.counts()[1]});
    header["time"] = time;
    header["name"] = name;
    os << header.dump() << '\n';
    for (double x : field.values())
        put_le(os, x);
    if (!os)
        throw std::runtime_error("failed to write snapshot '" + name + "'");
}

void write_snapshot(const std::filesystem::path& path, const Field& field, double time, const std::string& name) {
    std::ofstream os{path, std::ios::binary};
    if (!os)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_snapshot(os, field, time, name);
}

Snapshot read_snapshot(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("snapshot is missing its header line");
    const auto header = nlohmann::json::parse(line);
    const int dim = header.at("dim").get<int>();
    const auto extents = header.at("extents").get<std::vector<double>>();
    const auto counts = header.at("counts").get<std::vector<std::size_t>>();
    const Grid grid = make_grid(dim, extents, counts);

    std::vector<unsigned char> raw(grid.size() * 8);
    is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(is.gcount()) != raw.size())
        throw std::runtime_error("snapshot payload is truncated");
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = get_le(raw.data() + 8 * i);
    return Snapshot{Field{grid, std::move(values)}, header.at("time").get<double>(),
                    header.at("name").get<std::string>()};
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream is{path, std::ios::binary};
    if (!is)
        throw std::runtime_error("cannot open snapshot " + path.string());
    return read_snapshot(is);
}

void write_monitor_csv(std::ostream& os, const std::vector<MonitorRow>& rows) {
    os << "t,sup_u,sup_v,L1_u,L1_v,L2sq_u,L2sq_v,Y_u,Y_v,bound_ubu_slack,bound_ubv_slack,decay_slack,"
          "min_u,min_v,energy_slack\n";
    for (const MonitorRow& r : rows) {
        const double cols[] = {r.t,    r.sup_u, r.sup_v,     r.L1_u,      r.L1_v,      r.L2sq_u, r.L2sq_v,      r.Y_u,
                               r.Y_v,  r.ubu_slack, r.ubv_slack, r.decay_slack, r.min_u, r.min_v, r.energy_slack};
        for (std::size_t i = 0; i < std::size(cols); ++i)
            os << (i ? "," : "") << format_double(cols[i]);
        os << '\n';
    }
}

void write_diagnostics_csv(std::ostream& os, const std::vector<State>& snapshots, const NonlocalOperator& op,
                           const RhoProfile& rho) {
    os << "t,Y_u,Y_v,Lambda_u,sup_u,sup_v,L2_u,L2_v\n";
    const int j = op.table().spec.scale_j;
    for (const State& s : snapshots) {
        const double cols[] = {s.t,
                               dissipation_Y(op, s.u),
                               dissipation_Y(op, s.v),
                               seminorm_Lambda(rho, j, s.u),
                               norm(s.u, NormKind::sup),
                               norm(s.v, NormKind::sup),
                               norm(s.u, NormKind::L2),
                               norm(s.v, NormKind::L2)};
        for (std::size_t i = 0; i < std::size(cols); ++i)
            os << (i ? "," : "") << format_double(cols[i]);
        os << '\n';
    }
}

} // namespace nlgs
