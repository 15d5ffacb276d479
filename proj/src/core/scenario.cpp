#include "scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace podes {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double to_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw std::invalid_argument("scenario: bad numeric value for " + key + ": " + v);
    }
}

std::size_t to_size(const std::string& v, const std::string& key) {
    const double x = to_double(v, key);
    if (x < 0 || x != std::floor(x))
        throw std::invalid_argument("scenario: bad integer value for " + key + ": " + v);
    return static_cast<std::size_t>(x);
}

std::function<double(double)> parse_x_preset(const std::string& preset,
                                             const std::string& key) {
    const auto colon = preset.find(':');
    const std::string name = trim(colon == std::string::npos ? preset : preset.substr(0, colon));
    const std::string args = colon == std::string::npos ? "" : preset.substr(colon + 1);
    if (name == "zero") return [](double) { return 0.0; };
    if (name == "sine_mode") {
        const auto a = split(args, ',');
        if (a.empty()) throw std::invalid_argument("scenario: sine_mode needs a mode number");
        const double k = to_double(a[0], key);
        const double amp = a.size() > 1 ? to_double(a[1], key) : 1.0;
        return [k, amp](double x) { return amp * std::sin(k * kPi * x); };
    }
    if (name == "gaussian_bump") {
        const auto a = split(args, ',');
        if (a.size() != 3)
            throw std::invalid_argument("scenario: gaussian_bump needs center,width,amp");
        const double c = to_double(a[0], key), w = to_double(a[1], key),
                     amp = to_double(a[2], key);
        return [c, w, amp](double x) {
            const double r = (x - c) / w;
            return amp * std::exp(-r * r) * x * (1.0 - x) * 4.0;
        };
    }
    if (name == "poly") {
        const auto a = split(args, ',');
        std::vector<double> coeff;
        for (const auto& c : a) coeff.push_back(to_double(c, key));
        return [coeff](double x) {
            double acc = 0.0, p = 1.0;
            for (double c : coeff) {
                acc += c * p;
                p *= x;
            }
            return acc;
        };
    }
    throw std::invalid_argument("scenario: unknown preset for " + key + ": " + preset);
}

} // namespace

Scenario default_scenario() {
    Scenario s;
    s.phi0 = "sine_mode:1,0.1";
    return s;
}

PhysicalParams resolved_params(const Scenario& s) {
    PhysicalParams p = s.params;
    if (s.eta_auto) p.eta = admissible_eta_interval(p).midpoint();
    return p;
}

GridSpec scenario_grid(const Scenario& s) { return build_grid(s.N, s.M); }

InitialData make_initial_data(const Scenario& s) {
    InitialData d;
    d.u0 = parse_x_preset(s.u0, "initial.u0");
    d.u1 = parse_x_preset(s.u1, "initial.u1");
    d.phi0 = parse_x_preset(s.phi0, "initial.phi0");
    d.phi1 = parse_x_preset(s.phi1, "initial.phi1");

    const std::string f0 = trim(s.f0);
    if (f0 == "zero" || f0.empty()) {
        d.f0 = [](double, double) { return 0.0; };
    } else if (f0.rfind("separable:", 0) == 0) {
        const std::string body = f0.substr(10);
        const auto bar = body.find('|');
        if (bar == std::string::npos)
            throw std::invalid_argument("scenario: f0 separable needs <xpreset>|<one|exp>");
        auto fx = parse_x_preset(trim(body.substr(0, bar)), "initial.f0");
        const std::string mode = trim(body.substr(bar + 1));
        if (mode == "one")
            d.f0 = [fx](double x, double) { return fx(x); };
        else if (mode == "exp")
            d.f0 = [fx](double x, double ss) { return fx(x) * std::exp(ss); };
        else
            throw std::invalid_argument("scenario: f0 s-profile must be one or exp");
    } else {
        throw std::invalid_argument("scenario: unknown f0 preset: " + f0);
    }
    return d;
}

void apply_override(Scenario& s, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("override must be key=value: " + kv);
    const std::string key = trim(kv.substr(0, eq));
    const std::string val = trim(kv.substr(eq + 1));

    auto pfield = [&](const char* n) { return key == std::string("params.") + n; };
    if (pfield("rho")) s.params.rho = to_double(val, key);
    else if (pfield("mu")) s.params.mu = to_double(val, key);
    else if (pfield("J")) s.params.J = to_double(val, key);
    else if (pfield("delta")) s.params.delta = to_double(val, key);
    else if (pfield("xi")) s.params.xi = to_double(val, key);
    else if (pfield("b")) s.params.b = to_double(val, key);
    else if (pfield("mu1")) s.params.mu1 = to_double(val, key);
    else if (pfield("mu2")) s.params.mu2 = to_double(val, key);
    else if (pfield("tau")) s.params.tau = to_double(val, key);
    else if (pfield("eta")) {
        if (val == "auto") {
            s.eta_auto = true;
        } else {
            s.eta_auto = false;
            s.params.eta = to_double(val, key);
        }
    } else if (key == "forcing.kind") {
        if (val == "power_law") s.forcing.kind = ForcingKind::power_law;
        else if (val == "zero") s.forcing.kind = ForcingKind::zero;
        else throw std::invalid_argument("scenario: forcing.kind must be power_law or zero");
    } else if (key == "forcing.k0") s.forcing.k0 = to_double(val, key);
    else if (key == "forcing.theta") s.forcing.theta = to_double(val, key);
    else if (key == "initial.u0") s.u0 = val;
    else if (key == "initial.u1") s.u1 = val;
    else if (key == "initial.phi0") s.phi0 = val;
    else if (key == "initial.phi1") s.phi1 = val;
    else if (key == "initial.f0") s.f0 = val;
    else if (key == "grid.N") s.N = to_size(val, key);
    else if (key == "grid.M") s.M = to_size(val, key);
    else if (key == "time.t_end") s.t_end = to_double(val, key);
    else if (key == "time.cfl") s.cfl = to_double(val, key);
    else if (key == "time.out_every") s.out_every = to_size(val, key);
    else if (key == "time.dt") s.dt_override = to_double(val, key);
    else if (key == "output.dir") s.out_dir = val;
    else if (key == "output.formats") s.formats = split(val, ',');
    else if (key == "rng.seed") s.seed = static_cast<std::uint64_t>(std::stoull(val));
    else throw std::invalid_argument("scenario: unknown key: " + key);
}

Scenario parse_scenario_text(const std::string& text) {
    Scenario s;  // field defaults; file entries override
    std::stringstream ss(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("scenario: bad section header at line " +
                                            std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("scenario: expected key = value at line " +
                                        std::to_string(lineno));
        if (section.empty())
            throw std::invalid_argument("scenario: entry before any section at line " +
                                        std::to_string(lineno));
        apply_override(s, section + "." + trim(line.substr(0, eq)) + "=" +
                              trim(line.substr(eq + 1)));
    }
    return s;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

std::string canonical_text(const Scenario& s) {
    char num[64];
    auto d = [&num](double x) {
        std::snprintf(num, sizeof(num), "%.17g", x);
        return std::string(num);
    };
    std::ostringstream o;
    o << "[params]\n";
    o << "rho = " << d(s.params.rho) << "\nmu = " << d(s.params.mu)
      << "\nJ = " << d(s.params.J) << "\ndelta = " << d(s.params.delta)
      << "\nxi = " << d(s.params.xi) << "\nb = " << d(s.params.b)
      << "\nmu1 = " << d(s.params.mu1) << "\nmu2 = " << d(s.params.mu2)
      << "\ntau = " << d(s.params.tau) << "\neta = "
      << (s.eta_auto ? std::string("auto") : d(s.params.eta)) << "\n";
    o << "[forcing]\nkind = "
      << (s.forcing.kind == ForcingKind::zero ? "zero" : "power_law")
      << "\nk0 = " << d(s.forcing.k0) << "\ntheta = " << d(s.forcing.theta) << "\n";
    o << "[initial]\nu0 = " << s.u0 << "\nu1 = " << s.u1 << "\nphi0 = " << s.phi0
      << "\nphi1 = " << s.phi1 << "\nf0 = " << s.f0 << "\n";
    o << "[grid]\nN = " << s.N << "\nM = " << s.M << "\n";
    o << "[time]\nt_end = " << d(s.t_end) << "\ncfl = " << d(s.cfl)
      << "\nout_every = " << s.out_every;
    if (s.dt_override > 0.0) o << "\ndt = " << d(s.dt_override);
    o << "\n";
    o << "[output]\ndir = " << s.out_dir << "\nformats = ";
    for (std::size_t i = 0; i < s.formats.size(); ++i)
        o << (i ? "," : "") << s.formats[i];
    o << "\n[rng]\nseed = " << s.seed << "\n";
    return o.str();
}

std::uint64_t scenario_hash(const Scenario& s) {
    const std::string text = canonical_text(s);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string scenario_hash_hex(const Scenario& s) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(scenario_hash(s)));
    return buf;
}

ValidationReport validate_scenario(const Scenario& s) {
    return validate_params(resolved_params(s));
}

} // namespace podes
