#include "lpsw/config.hpp"

#include <cctype>
#include <climits>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace lpsw {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, int line) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + v + "'");
    }
    if (pos != v.size()) fail(line, "trailing characters after number '" + v + "'");
    return x;
}

long to_long(const std::string& v, int line) {
    std::size_t pos = 0;
    long x = 0;
    try {
        x = std::stol(v, &pos);
    } catch (const std::exception&) {
        fail(line, "expected an integer, got '" + v + "'");
    }
    if (pos != v.size()) fail(line, "trailing characters after integer '" + v + "'");
    return x;
}

int to_int(const std::string& v, int line) {
    const long x = to_long(v, line);
    if (x < INT_MIN || x > INT_MAX) fail(line, "integer out of range: '" + v + "'");
    return static_cast<int>(x);
}

unsigned long long to_ull(const std::string& v, int line) {
    std::size_t pos = 0;
    unsigned long long x = 0;
    try {
        x = std::stoull(v, &pos);
    } catch (const std::exception&) {
        fail(line, "expected a nonnegative integer, got '" + v + "'");
    }
    if (pos != v.size()) fail(line, "trailing characters after integer '" + v + "'");
    return x;
}

bool to_bool(const std::string& v, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail(line, "expected true or false, got '" + v + "'");
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    std::vector<std::string> seen;
    int line = 0;

    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "grid" && section != "solver" && section != "data" &&
                section != "analysis" && section != "output")
                fail(line, "unknown section [" + section + "]");
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (section.empty()) fail(line, "key '" + key + "' before any section");
        if (key.empty()) fail(line, "empty key");
        if (val.empty()) fail(line, "empty value for '" + key + "'");

        const std::string qual = section + "." + key;
        for (const std::string& q : seen)
            if (q == qual) fail(line, "duplicate key '" + key + "' in [" + section + "]");
        seen.push_back(qual);

        if (section == "grid") {
            if (key == "dim")
                cfg.dim = to_int(val, line);
            else if (key == "n")
                cfg.n = to_int(val, line);
            else if (key == "period")
                cfg.period = to_double(val, line);
            else
                fail(line, "unknown key '" + key + "' in [grid]");
        } else if (section == "solver") {
            if (key == "n_cut") {
                if (val == "auto")
                    cfg.n_cut = 0.0;
                else
                    cfg.n_cut = to_double(val, line);
            } else if (key == "gamma")
                cfg.gamma = to_double(val, line);
            else if (key == "T") {
                if (val == "auto") {
                    cfg.t_auto = true;
                } else {
                    cfg.T = to_double(val, line);
                    cfg.t_auto = false;
                }
            } else if (key == "dt")
                cfg.dt = to_double(val, line);
            else if (key == "cfl")
                cfg.cfl = to_double(val, line);
            else if (key == "eps_vac")
                cfg.eps_vac = to_double(val, line);
            else if (key == "pad_factor")
                cfg.pad_factor = to_int(val, line);
            else if (key == "max_steps")
                cfg.max_steps = to_long(val, line);
            else if (key == "sample_stride")
                cfg.sample_stride = to_int(val, line);
            else if (key == "ramp_start")
                cfg.ramp_start = to_double(val, line);
            else if (key == "ramp_factor")
                cfg.ramp_factor = to_double(val, line);
            else if (key == "nonlinear")
                cfg.nonlinear = to_bool(val, line);
            else
                fail(line, "unknown key '" + key + "' in [solver]");
        } else if (section == "data") {
            if (key == "family") {
                if (val != "equilibrium" && val != "trig" && val != "multiscale" &&
                    val != "near_vacuum")
                    fail(line, "unknown data family '" + val + "'");
                cfg.family = val;
            } else if (key == "j_lo")
                cfg.j_lo = to_int(val, line);
            else if (key == "j_hi")
                cfg.j_hi = to_int(val, line);
            else if (key == "slope")
                cfg.slope = to_double(val, line);
            else if (key == "decay")
                cfg.decay = to_double(val, line);
            else if (key == "q_target")
                cfg.q_target = to_double(val, line);
            else if (key == "u_target")
                cfg.u_target = to_double(val, line);
            else if (key == "seed")
                cfg.seed = to_ull(val, line);
            else if (key == "margin")
                cfg.margin = to_double(val, line);
            else
                fail(line, "unknown key '" + key + "' in [data]");
        } else if (section == "analysis") {
            if (key == "eta")
                cfg.eta = to_double(val, line);
            else if (key == "alpha")
                cfg.alpha = to_double(val, line);
            else if (key == "m") {
                if (val == "auto") {
                    cfg.m_auto = true;
                } else {
                    cfg.m = to_int(val, line);
                    cfg.m_auto = false;
                }
            } else
                fail(line, "unknown key '" + key + "' in [analysis]");
        } else {
            if (key == "dir")
                cfg.out_dir = val;
            else if (key == "name")
                cfg.name = val;
            else if (key == "checkpoints")
                cfg.checkpoints = to_bool(val, line);
            else if (key == "checkpoint_stride")
                cfg.checkpoint_stride = to_int(val, line);
            else
                fail(line, "unknown key '" + key + "' in [output]");
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string config_echo(const RunConfig& cfg) {
    std::ostringstream o;
    o << "[grid]\n";
    o << "dim = " << cfg.dim << "\n";
    o << "n = " << cfg.n << "\n";
    o << "period = " << fmt(cfg.period) << "\n";
    o << "\n[solver]\n";
    o << "n_cut = " << fmt(cfg.n_cut) << "\n";
    o << "gamma = " << fmt(cfg.gamma) << "\n";
    o << "T = " << (cfg.t_auto ? std::string("auto") : fmt(cfg.T)) << "\n";
    o << "dt = " << fmt(cfg.dt) << "\n";
    o << "cfl = " << fmt(cfg.cfl) << "\n";
    o << "eps_vac = " << fmt(cfg.eps_vac) << "\n";
    o << "pad_factor = " << cfg.pad_factor << "\n";
    o << "max_steps = " << cfg.max_steps << "\n";
    o << "sample_stride = " << cfg.sample_stride << "\n";
    o << "ramp_start = " << fmt(cfg.ramp_start) << "\n";
    o << "ramp_factor = " << fmt(cfg.ramp_factor) << "\n";
    o << "nonlinear = " << (cfg.nonlinear ? "true" : "false") << "\n";
    o << "\n[data]\n";
    o << "family = " << cfg.family << "\n";
    o << "j_lo = " << cfg.j_lo << "\n";
    o << "j_hi = " << cfg.j_hi << "\n";
    o << "slope = " << fmt(cfg.slope) << "\n";
    o << "decay = " << fmt(cfg.decay) << "\n";
    o << "q_target = " << fmt(cfg.q_target) << "\n";
    o << "u_target = " << fmt(cfg.u_target) << "\n";
    o << "seed = " << cfg.seed << "\n";
    o << "margin = " << fmt(cfg.margin) << "\n";
    o << "\n[analysis]\n";
    o << "eta = " << fmt(cfg.eta) << "\n";
    o << "alpha = " << fmt(cfg.alpha) << "\n";
    o << "m = " << (cfg.m_auto ? std::string("auto") : std::to_string(cfg.m)) << "\n";
    o << "\n[output]\n";
    o << "dir = " << cfg.out_dir << "\n";
    o << "name = " << cfg.name << "\n";
    o << "checkpoints = " << (cfg.checkpoints ? "true" : "false") << "\n";
    o << "checkpoint_stride = " << cfg.checkpoint_stride << "\n";
    return o.str();
}

}  // namespace lpsw
