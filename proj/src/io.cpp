#include "fracollapse/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace fracollapse {

namespace {

void put_u32(std::ostream& os, uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

void write_header(std::ostream& os, uint32_t version, const Grid& g, double time) {
    os.write("FNLS", 4);
    put_u32(os, version);
    put_u32(os, static_cast<uint32_t>(g.dim()));
    put_u32(os, static_cast<uint32_t>(g.n()));
    put_f64(os, g.half_length());
    put_f64(os, time);
}

struct Header {
    uint32_t version = 0;
    Grid grid;
    double time = 0.0;
};

Header read_header(std::istream& is, const std::string& path) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "FNLS", 4) != 0)
        throw io_error(path + ": not a FNLS snapshot (bad magic)");
    Header h;
    h.version = get_u32(is);
    uint32_t dim = get_u32(is);
    uint32_t n = get_u32(is);
    double half_length = get_f64(is);
    h.time = get_f64(is);
    if (!is) throw io_error(path + ": truncated header");
    h.grid = Grid(static_cast<int>(dim), static_cast<int>(n), half_length);
    return h;
}

void write_payload(std::ostream& os, const Field& field) {
    for (std::ptrdiff_t i = 0; i < field.values().size(); ++i) {
        put_f64(os, field.values()[i].real());
        put_f64(os, field.values()[i].imag());
    }
}

Field read_payload(std::istream& is, const Grid& g, const std::string& path) {
    Eigen::ArrayXcd vals(g.size());
    for (std::ptrdiff_t i = 0; i < g.size(); ++i) {
        double re = get_f64(is);
        double im = get_f64(is);
        vals[i] = {re, im};
    }
    if (!is) throw io_error(path + ": truncated payload");
    return Field(g, std::move(vals));
}

}  // namespace

std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_snapshot(const std::string& path, const Field& field, double time) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open for writing: " + path);
    write_header(os, kSnapshotVersion, field.grid(), time);
    write_payload(os, field);
    if (!os) throw io_error("write failed: " + path);
}

LoadedSnapshot read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open: " + path);
    Header h = read_header(is, path);
    if (h.version != kSnapshotVersion)
        throw io_error(path + ": unexpected snapshot version " + std::to_string(h.version));
    return {read_payload(is, h.grid, path), h.time};
}

void write_ground_state(const std::string& path, const GroundState& gs) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open for writing: " + path);
    write_header(os, kGroundStateVersion, gs.profile.grid(), 0.0);
    put_f64(os, gs.s);
    put_f64(os, gs.p);
    put_f64(os, gs.c_opt);
    put_f64(os, gs.residual);
    write_payload(os, gs.profile);
    if (!os) throw io_error("write failed: " + path);
}

GroundState read_ground_state(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open: " + path);
    Header h = read_header(is, path);
    if (h.version != kGroundStateVersion)
        throw io_error(path + ": not a ground-state file (version " + std::to_string(h.version) +
                       ")");
    GroundState gs;
    gs.s = get_f64(is);
    gs.p = get_f64(is);
    gs.c_opt = get_f64(is);
    gs.residual = get_f64(is);
    gs.dim = h.grid.dim();
    gs.profile = read_payload(is, h.grid, path);
    gs.mass_sq = mass(gs.profile);
    gs.grad_sq = std::pow(hs_seminorm(gs.profile, gs.s), 2);
    gs.lp_power = lq_power(gs.profile, 2.0 * gs.p + 2.0);
    return gs;
}

void write_slice_csv(const std::string& path, const Field& field) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    const Grid& g = field.grid();
    os << "x,re,im,abs2\n";
    std::array<int, 3> idx{};
    for (int d = 0; d < g.dim(); ++d) idx[d] = g.n() / 2;
    for (int j = 0; j < g.n(); ++j) {
        idx[0] = j;
        auto v = field.values()[g.ravel(idx)];
        os << format_g17(g.coord(j)) << "," << format_g17(v.real()) << "," << format_g17(v.imag())
           << "," << format_g17(std::norm(v)) << "\n";
    }
}

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRecord>& rows) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    os << "t,mass,energy,hs,lp1,lp2,virial,conc_mass\n";
    for (const auto& r : rows) {
        os << format_g17(r.t) << "," << format_g17(r.mass) << "," << format_g17(r.energy) << ","
           << format_g17(r.hs) << "," << format_g17(r.lp1) << "," << format_g17(r.lp2) << ",";
        if (r.virial) os << format_g17(*r.virial);
        os << ",";
        if (r.conc_mass) os << format_g17(*r.conc_mass);
        os << "\n";
    }
}

std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open: " + path);
    std::string line;
    if (!std::getline(is, line)) throw data_error(path + ": empty diagnostics CSV");
    std::vector<DiagnosticsRecord> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        cells.resize(8);
        DiagnosticsRecord r;
        r.t = std::stod(cells[0]);
        r.mass = std::stod(cells[1]);
        r.energy = std::stod(cells[2]);
        r.hs = std::stod(cells[3]);
        r.lp1 = std::stod(cells[4]);
        r.lp2 = std::stod(cells[5]);
        if (!cells[6].empty()) r.virial = std::stod(cells[6]);
        if (!cells[7].empty()) r.conc_mass = std::stod(cells[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_certificate_csv(const std::string& path, const GroundState& gs) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    os << "mass_sq,grad_sq,lp_power,c_opt,residual\n";
    os << format_g17(gs.mass_sq) << "," << format_g17(gs.grad_sq) << ","
       << format_g17(gs.lp_power) << "," << format_g17(gs.c_opt) << ","
       << format_g17(gs.residual) << "\n";
}

void write_concentration_csv(const std::string& path,
                             const std::vector<ConcentrationSample>& rows, int dim) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    os << "t,a";
    for (int d = 0; d < dim; ++d) os << ",c" << d;
    os << ",window_mass\n";
    for (const auto& r : rows) {
        os << format_g17(r.t) << "," << format_g17(r.radius);
        for (int d = 0; d < dim; ++d) os << "," << format_g17(r.center[d]);
        os << "," << format_g17(r.window_mass) << "\n";
    }
}

void write_profile_csv(const std::string& path, const std::vector<ProfileDistance>& rows) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    os << "t,rho,theta,l2_dist,hs_dist\n";
    for (const auto& r : rows)
        os << format_g17(r.t) << "," << format_g17(r.rho) << "," << format_g17(r.theta) << ","
           << format_g17(r.l2_dist) << "," << format_g17(r.hs_dist) << "\n";
}

void write_manifest(const std::string& path, const Manifest& manifest) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    for (const auto& [k, v] : manifest) os << k << "=" << v << "\n";
}

Manifest read_manifest(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open: " + path);
    Manifest m;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw data_error(path + ": malformed manifest line: " + line);
        m[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return m;
}

}  // namespace fracollapse
