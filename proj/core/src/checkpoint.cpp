#include "lpsw/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace lpsw {

namespace {

constexpr char kMagic[8] = {'L', 'P', 'S', 'W', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kFormatVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

}  // namespace

const SpectralField& Checkpoint::field(const std::string& name) const {
    for (const auto& [n, f] : fields)
        if (n == name) return f;
    throw std::out_of_range("checkpoint has no field named " + name);
}

void save_checkpoint(const std::string& path, const Checkpoint& c) {
    if (c.fields.empty()) throw std::invalid_argument("checkpoint has no fields");
    const PeriodicGrid& g = c.fields.front().second.grid();

    nlohmann::json header;
    header["time"] = c.time;
    header["grid"]["dim"] = g.dim();
    header["grid"]["n"] = g.n();
    std::vector<double> periods;
    for (int ax = 0; ax < g.dim(); ++ax) periods.push_back(g.period(ax));
    header["grid"]["periods"] = periods;
    header["fields"] = nlohmann::json::array();
    for (const auto& [name, f] : c.fields) {
        if (f.grid() != g)
            throw std::invalid_argument("checkpoint fields live on different grids");
        header["fields"].push_back(
            {{"name", name}, {"ncomp", f.ncomp()}, {"mean_zero", f.mean_zero()}});
    }
    std::string htext = header.dump();

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os.write(kMagic, sizeof kMagic);
    write_u32(os, kFormatVersion);
    write_u32(os, static_cast<std::uint32_t>(htext.size()));
    os.write(htext.data(), static_cast<std::streamsize>(htext.size()));
    for (const auto& [name, f] : c.fields) {
        (void)name;
        const auto& raw = f.raw();
        os.write(reinterpret_cast<const char*>(raw.data()),
                 static_cast<std::streamsize>(raw.size() * sizeof(cplx)));
    }
    if (!os) throw std::runtime_error("short write to " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    char magic[8];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw std::runtime_error(path + " is not a checkpoint file");
    std::uint32_t version = read_u32(is);
    if (version != kFormatVersion)
        throw std::runtime_error(path + ": unsupported checkpoint format version " +
                                 std::to_string(version));
    std::uint32_t hlen = read_u32(is);
    std::string htext(hlen, '\0');
    is.read(htext.data(), hlen);
    if (!is) throw std::runtime_error(path + ": truncated header");
    nlohmann::json header = nlohmann::json::parse(htext);

    int dim = header.at("grid").at("dim").get<int>();
    int n = header.at("grid").at("n").get<int>();
    auto periods = header.at("grid").at("periods").get<std::vector<double>>();
    if (static_cast<int>(periods.size()) != dim)
        throw std::runtime_error(path + ": period count does not match dimension");
    PeriodicGrid g = dim == 1 ? PeriodicGrid(1, n, periods[0])
                              : PeriodicGrid(2, n, {periods[0], periods[1]});

    Checkpoint c;
    c.time = header.at("time").get<double>();
    for (const auto& fh : header.at("fields")) {
        std::string name = fh.at("name").get<std::string>();
        int ncomp = fh.at("ncomp").get<int>();
        SpectralField f(g, ncomp);
        is.read(reinterpret_cast<char*>(f.raw().data()),
                static_cast<std::streamsize>(f.raw().size() * sizeof(cplx)));
        if (!is) throw std::runtime_error(path + ": truncated coefficient data");
        if (fh.at("mean_zero").get<bool>()) f.set_mean_zero();
        c.fields.emplace_back(std::move(name), std::move(f));
    }
    return c;
}

void save_state(const std::string& path, const SolverState& s) {
    Checkpoint c;
    c.time = s.time;
    c.fields.emplace_back("q", s.q);
    c.fields.emplace_back("ubar", s.ubar);
    c.fields.emplace_back("ulin", s.ulin);
    c.fields.emplace_back("u", s.u);
    save_checkpoint(path, c);
}

SolverState load_state(const std::string& path) {
    Checkpoint c = load_checkpoint(path);
    SolverState s;
    s.time = c.time;
    s.q = c.field("q");
    s.ubar = c.field("ubar");
    s.ulin = c.field("ulin");
    s.u = c.field("u");
    return s;
}

}  // namespace lpsw
