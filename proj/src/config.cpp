#include "wpc/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

namespace wpc {

using nlohmann::json;

long TimeConfig::steps() const { return std::lround(T / dt); }

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, _] : obj.items()) {
        if (!allowed.count(k)) throw UnknownKey(join(path, k));
    }
}

const json& object_at(const json& obj, const std::string& parent, const char* key, bool required) {
    static const json empty = json::object();
    const std::string path = join(parent, key);
    if (!obj.contains(key)) {
        if (required) throw ValidationError(path, "required");
        return empty;
    }
    const json& v = obj.at(key);
    if (!v.is_object()) throw ValidationError(path, "must be an object");
    return v;
}

std::optional<double> number_at(const json& obj, const std::string& parent, const char* key,
                                bool required) {
    const std::string path = join(parent, key);
    if (!obj.contains(key)) {
        if (required) throw ValidationError(path, "required");
        return std::nullopt;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) throw ValidationError(path, "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ValidationError(path, "must be finite");
    return d;
}

std::optional<long long> integer_at(const json& obj, const std::string& parent, const char* key,
                                    bool required) {
    const std::string path = join(parent, key);
    if (!obj.contains(key)) {
        if (required) throw ValidationError(path, "required");
        return std::nullopt;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ValidationError(path, "must be an integer");
    return v.get<long long>();
}

std::optional<std::vector<double>> array_at(const json& obj, const std::string& parent,
                                            const char* key, bool required) {
    const std::string path = join(parent, key);
    if (!obj.contains(key)) {
        if (required) throw ValidationError(path, "required");
        return std::nullopt;
    }
    const json& v = obj.at(key);
    if (!v.is_array()) throw ValidationError(path, "must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const json& e : v) {
        if (!e.is_number()) throw ValidationError(path, "must be an array of numbers");
        const double d = e.get<double>();
        if (!std::isfinite(d)) throw ValidationError(path, "entries must be finite");
        out.push_back(d);
    }
    return out;
}

void require(bool ok, const std::string& path, const char* reason) {
    if (!ok) throw ValidationError(path, reason);
}

void parse_params(const json& root, SimConfig& c) {
    const json& p = object_at(root, "", "params", true);
    reject_unknown(p, "params", {"rho_a", "C_a", "rho_b", "C_b", "W", "kappa_a", "b", "rho",
                                 "beta_acous", "theta_a", "tau"});
    PhysicalParams& pp = c.params;
    auto positive = [&](const char* key, double& out) {
        out = *number_at(p, "params", key, true);
        require(out > 0.0, join("params", key), "must be positive");
    };
    positive("rho_a", pp.rho_a);
    positive("C_a", pp.C_a);
    positive("rho_b", pp.rho_b);
    positive("C_b", pp.C_b);
    positive("kappa_a", pp.kappa_a);
    positive("rho", pp.rho);
    positive("beta_acous", pp.beta_acous);
    pp.b = *number_at(p, "params", "b", true);
    require(pp.b > 0.0, "params.b", "must be strictly positive");
    pp.W = *number_at(p, "params", "W", true);
    require(pp.W >= 0.0, "params.W", "must be nonnegative");
    pp.theta_a = *number_at(p, "params", "theta_a", true);
    pp.tau = *number_at(p, "params", "tau", true);
    require(pp.tau >= 0.0, "params.tau", "must be nonnegative");
}

void parse_speed_model(const json& root, SimConfig& c) {
    const json& s = object_at(root, "", "speed_model", true);
    reject_unknown(s, "speed_model", {"coeffs", "h_floor", "growth_exponents"});
    c.speed_model.coeffs = *array_at(s, "speed_model", "coeffs", true);
    require(!c.speed_model.coeffs.empty(), "speed_model.coeffs", "must not be empty");
    c.speed_model.h_floor = *number_at(s, "speed_model", "h_floor", true);
    require(c.speed_model.h_floor > 0.0, "speed_model.h_floor", "must be positive");
    require(c.speed_model.coeffs.front() >= c.speed_model.h_floor, "speed_model.coeffs",
            "value at theta = 0 must be at least h_floor");
    if (auto g = array_at(s, "speed_model", "growth_exponents", false)) {
        require(g->size() == 2, "speed_model.growth_exponents", "must have two entries");
        c.speed_model.growth_exponents = {(*g)[0], (*g)[1]};
    }
}

void parse_initial_data(const json& root, SimConfig& c) {
    const json& d = object_at(root, "", "initial_data", true);
    reject_unknown(d, "initial_data", {"preset", "amplitude_p", "amplitude_theta", "mode_k", "center",
                                       "width", "flux", "p0", "p1", "theta0", "q0"});
    InitialDataConfig& id = c.initial_data;
    if (!d.contains("preset")) throw ValidationError("initial_data.preset", "required");
    if (!d.at("preset").is_string()) throw ValidationError("initial_data.preset", "must be a string");
    id.preset = d.at("preset").get<std::string>();
    if (id.preset != "zero" && id.preset != "sine" && id.preset != "gaussian" && id.preset != "raw") {
        throw ValidationError("initial_data.preset", "must be one of zero, sine, gaussian, raw");
    }
    id.amplitude_p = number_at(d, "initial_data", "amplitude_p", false).value_or(0.0);
    id.amplitude_theta = number_at(d, "initial_data", "amplitude_theta", false).value_or(0.0);
    id.mode_k = static_cast<int>(integer_at(d, "initial_data", "mode_k", false).value_or(1));
    require(id.mode_k >= 1, "initial_data.mode_k", "must be at least 1");
    id.center = number_at(d, "initial_data", "center", false).value_or(0.5 * c.grid.L);
    id.width = number_at(d, "initial_data", "width", false).value_or(0.1 * c.grid.L);
    require(id.width > 0.0, "initial_data.width", "must be positive");

    if (d.contains("flux")) {
        const json& fl = d.at("flux");
        if (!fl.is_string()) throw ValidationError("initial_data.flux", "must be a string");
        id.flux = fl.get<std::string>();
        if (id.flux != "fourier" && id.flux != "zero") {
            throw ValidationError("initial_data.flux", "must be fourier or zero");
        }
        if (id.preset == "raw") throw ValidationError("initial_data.flux", "not allowed with preset raw");
    }

    const std::size_t n = c.grid.N;
    auto raw = [&](const char* key, std::vector<double>& out, std::size_t len, bool required) {
        auto a = array_at(d, "initial_data", key, required);
        if (!a) return;
        if (id.preset != "raw") throw ValidationError(join("initial_data", key), "only allowed with preset raw");
        require(a->size() == len, join("initial_data", key),
                len == n ? "must have N entries" : "must have N+1 entries");
        out = std::move(*a);
    };
    const bool is_raw = id.preset == "raw";
    raw("p0", id.p0, n, is_raw);
    raw("p1", id.p1, n, false);
    raw("theta0", id.theta0, n, is_raw);
    raw("q0", id.q0, n + 1, false);
}

void parse_time(const json& root, SimConfig& c) {
    const json& t = object_at(root, "", "time", true);
    reject_unknown(t, "time", {"T", "dt", "output_stride", "snapshot_times"});
    c.time.T = *number_at(t, "time", "T", true);
    require(c.time.T >= 0.0, "time.T", "must be nonnegative");
    c.time.dt = *number_at(t, "time", "dt", true);
    require(c.time.dt > 0.0, "time.dt", "must be positive");
    c.time.output_stride = static_cast<int>(integer_at(t, "time", "output_stride", false).value_or(1));
    require(c.time.output_stride >= 1, "time.output_stride", "must be at least 1");
    c.time.snapshot_times = array_at(t, "time", "snapshot_times", false).value_or(std::vector<double>{});
    for (double s : c.time.snapshot_times) {
        require(s >= 0.0 && s <= c.time.T, "time.snapshot_times", "entries must lie in [0, T]");
    }
    const double steps = c.time.T / c.time.dt;
    require(std::abs(steps - std::round(steps)) <= 1e-6 * std::max(1.0, steps), "time.T",
            "must be an integer multiple of dt");
}

void parse_picard(const json& root, SimConfig& c) {
    const json& p = object_at(root, "", "picard", false);
    reject_unknown(p, "picard", {"tol", "max_iter", "gamma_bar"});
    c.picard.tol = number_at(p, "picard", "tol", false).value_or(c.picard.tol);
    require(c.picard.tol > 0.0, "picard.tol", "must be positive");
    c.picard.max_iter = static_cast<int>(integer_at(p, "picard", "max_iter", false).value_or(c.picard.max_iter));
    require(c.picard.max_iter >= 1, "picard.max_iter", "must be at least 1");
    c.picard.gamma_bar = number_at(p, "picard", "gamma_bar", false).value_or(c.picard.gamma_bar);
    require(c.picard.gamma_bar > 0.0 && c.picard.gamma_bar < 1.0, "picard.gamma_bar",
            "must lie in (0, 1)");
}

void parse_sweep(const json& root, SimConfig& c) {
    const json& s = object_at(root, "", "sweep", false);
    reject_unknown(s, "sweep", {"tau_list"});
    c.tau_list = array_at(s, "sweep", "tau_list", false).value_or(std::vector<double>{});
    for (std::size_t i = 0; i < c.tau_list.size(); ++i) {
        require(c.tau_list[i] > 0.0, "sweep.tau_list", "entries must be positive");
        if (i > 0) require(c.tau_list[i] < c.tau_list[i - 1], "sweep.tau_list", "must be strictly decreasing");
    }
}

} // namespace

SimConfig load_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
    }
    if (!root.is_object()) throw ParseError(1, "top level must be an object");
    reject_unknown(root, "", {"grid", "params", "speed_model", "initial_data", "time", "picard",
                              "sweep", "seed"});

    SimConfig c;
    const json& g = object_at(root, "", "grid", true);
    reject_unknown(g, "grid", {"L", "N"});
    c.grid.L = *number_at(g, "grid", "L", true);
    require(c.grid.L > 0.0, "grid.L", "must be positive");
    const long long n = *integer_at(g, "grid", "N", true);
    require(n >= 2, "grid.N", "must be at least 2");
    c.grid.N = static_cast<std::size_t>(n);

    parse_params(root, c);
    parse_speed_model(root, c);
    parse_initial_data(root, c);
    parse_time(root, c);
    parse_picard(root, c);
    parse_sweep(root, c);
    if (root.contains("seed")) {
        const json& s = root.at("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
            throw ValidationError("seed", "must be a nonnegative integer");
        }
        c.seed = s.get<std::uint64_t>();
    }

    const auto violations = validate_params(c.params, c.speed_model);
    if (!violations.empty()) throw ValidationError("params", violations.front());
    return c;
}

SimConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("config", "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config(buf.str());
}

InitialFields make_initial_fields(const SimConfig& config) {
    const Grid1D g = config.make_grid();
    const InitialDataConfig& id = config.initial_data;
    InitialFields f{NodeField(g), NodeField(g), NodeField(g), FaceField(g)};
    if (id.preset == "sine") {
        const double k = id.mode_k * std::numbers::pi / g.length();
        f.p0 = NodeField::from_function(g, [&](double x) { return id.amplitude_p * std::sin(k * x); });
        f.theta0 = NodeField::from_function(g, [&](double x) { return id.amplitude_theta * std::sin(k * x); });
    } else if (id.preset == "gaussian") {
        auto bump = [&](double x) {
            const double z = (x - id.center) / id.width;
            return std::exp(-z * z);
        };
        f.p0 = NodeField::from_function(g, [&](double x) { return id.amplitude_p * bump(x); });
        f.theta0 = NodeField::from_function(g, [&](double x) { return id.amplitude_theta * bump(x); });
    }
    if ((id.preset == "sine" || id.preset == "gaussian") && id.flux == "fourier") {
        f.q0 = -config.params.kappa_a * gradient_to_faces(f.theta0);
    } else if (id.preset == "raw") {
        f.p0 = NodeField(g, id.p0);
        f.theta0 = NodeField(g, id.theta0);
        if (!id.p1.empty()) f.p1 = NodeField(g, id.p1);
        if (!id.q0.empty()) f.q0 = FaceField(g, id.q0);
    }
    return f;
}

} // namespace wpc
