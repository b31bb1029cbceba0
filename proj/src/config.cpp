#include "mixedlap/config.hpp"

#include "mixedlap/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace mixedlap {

namespace {

using nlohmann::json;

double number(const json& j, const std::string& key) {
    if (!j.is_number()) throw ParseError(key, key + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(key, key + " must be finite");
    return v;
}

long long integer(const json& j, const std::string& key) {
    if (!j.is_number_integer()) throw ParseError(key, key + " must be an integer");
    return j.get<long long>();
}

std::string text(const json& j, const std::string& key) {
    if (!j.is_string()) throw ParseError(key, key + " must be a string");
    return j.get<std::string>();
}

LoadSpec parse_load(const json& j) {
    if (!j.is_object() || j.size() != 1) {
        throw ParseError("f", "f must be one of {\"constant\": v}, {\"polynomial\": [...]}, {\"csv\": path}");
    }
    LoadSpec spec;
    const std::string kind = j.begin().key();
    const json& body = j.begin().value();
    if (kind == "constant") {
        spec.kind = LoadKind::constant;
        spec.value = number(body, "f.constant");
    } else if (kind == "polynomial") {
        spec.kind = LoadKind::polynomial;
        if (!body.is_array() || body.empty()) {
            throw ParseError("f.polynomial", "f.polynomial must be a nonempty list of numbers");
        }
        for (const auto& c : body) spec.coefficients.push_back(number(c, "f.polynomial"));
    } else if (kind == "csv") {
        spec.kind = LoadKind::sampled;
        spec.path = text(body, "f.csv");
    } else {
        throw ParseError("f." + kind, "unknown load kind " + kind);
    }
    return spec;
}

void parse_quad(const json& j, QuadratureSpec& q) {
    if (!j.is_object()) throw ParseError("quad", "quad must be an object");
    for (const auto& [k, v] : j.items()) {
        const std::string key = "quad." + k;
        if (k == "inner_radius") {
            q.inner_radius = number(v, key);
        } else if (k == "outer_radius") {
            q.outer_radius = number(v, key);
        } else if (k == "panels") {
            q.panels = static_cast<int>(integer(v, key));
        } else if (k == "tolerance") {
            q.tolerance = number(v, key);
        } else {
            throw ParseError(key, "unknown key " + key);
        }
    }
    try {
        q.validate();
    } catch (const DomainError& e) {
        throw ParseError("quad", e.what());
    }
}

std::vector<std::string> required_keys(Command c) {
    switch (c) {
        case Command::solve: return {"s", "domain", "n", "f"};
        case Command::verify: return {"s", "n"};
        case Command::barrier:
        case Command::counterexample: return {"s"};
    }
    return {};
}

}  // namespace

const char* command_name(Command c) {
    switch (c) {
        case Command::solve: return "solve";
        case Command::barrier: return "barrier";
        case Command::verify: return "verify";
        case Command::counterexample: return "counterexample";
    }
    return "?";
}

RunConfig parse_config(const std::string& document) {
    json j;
    try {
        j = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError("<document>", std::string("malformed document: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("<document>", "config must be an object");

    RunConfig cfg;
    if (!j.contains("command")) throw ParseError("command", "missing required key command");
    const std::string cmd = text(j["command"], "command");
    if (cmd == "solve") {
        cfg.command = Command::solve;
    } else if (cmd == "barrier") {
        cfg.command = Command::barrier;
    } else if (cmd == "verify") {
        cfg.command = Command::verify;
    } else if (cmd == "counterexample") {
        cfg.command = Command::counterexample;
    } else {
        throw ParseError("command", "unknown command " + cmd);
    }
    for (const auto& key : required_keys(cfg.command)) {
        if (!j.contains(key)) throw ParseError(key, "missing required key " + key);
    }

    for (const auto& [key, v] : j.items()) {
        if (key == "command") {
            continue;
        } else if (key == "s") {
            cfg.s = number(v, key);
            if (!(cfg.s > 0.0 && cfg.s < 1.0)) throw ParseError(key, "s must lie in (0,1)");
        } else if (key == "domain") {
            if (!v.is_array() || v.size() != 2) throw ParseError(key, "domain must be [a, b]");
            cfg.a = number(v[0], key);
            cfg.b = number(v[1], key);
            if (!(cfg.a < cfg.b)) throw ParseError(key, "domain needs a < b");
        } else if (key == "n") {
            const long long n = integer(v, key);
            if (n < 1 || n > 8192) throw ParseError(key, "n must lie in [1, 8192]");
            cfg.n = static_cast<int>(n);
        } else if (key == "f") {
            cfg.f = parse_load(v);
        } else if (key == "quad") {
            parse_quad(v, cfg.quad);
        } else if (key == "output_dir") {
            cfg.output_dir = text(v, key);
        } else if (key == "seed") {
            const long long seed = integer(v, key);
            if (seed < 0) throw ParseError(key, "seed must be nonnegative");
            cfg.seed = static_cast<std::uint64_t>(seed);
        } else if (key == "iterative") {
            if (!v.is_boolean()) throw ParseError(key, "iterative must be true or false");
            cfg.iterative = v.get<bool>();
        } else if (key == "dump") {
            if (!v.is_boolean()) throw ParseError(key, "dump must be true or false");
            cfg.dump = v.get<bool>();
        } else if (key == "example") {
            cfg.example = text(v, key);
            static const std::set<std::string> known{"ces", "general", "boundary"};
            if (!known.count(cfg.example)) {
                throw ParseError(key, "example must be ces, general or boundary");
            }
        } else if (key == "dim") {
            const long long d = integer(v, key);
            if (d < 1 || d > 3) throw ParseError(key, "dim must be 1, 2 or 3");
            cfg.dim = static_cast<int>(d);
        } else if (key == "r") {
            cfg.r = number(v, key);
            if (!(cfg.r > 1.0)) throw ParseError(key, "r must exceed 1");
        } else {
            throw ParseError(key, "unknown key " + key);
        }
    }
    if (cfg.command == Command::counterexample && cfg.example == "ces" && !(cfg.s < 0.5)) {
        throw ParseError("s", "the ces example needs s in (0, 1/2)");
    }
    if (cfg.command != Command::counterexample && cfg.dim != 1) {
        throw ParseError("dim", "dim applies to the general counterexample only");
    }
    return cfg;
}

std::string merge_config(const std::string& base, const std::string& patch) {
    json j;
    try {
        j = base.empty() ? json::object() : json::parse(base);
        j.merge_patch(json::parse(patch));
    } catch (const json::parse_error& e) {
        throw ParseError("<document>", std::string("malformed document: ") + e.what());
    }
    return j.dump();
}

ScalarField make_load(const LoadSpec& spec, double a, double b) {
    const TailModel tail = TailModel::compact(std::max(std::abs(a), std::abs(b)));
    switch (spec.kind) {
        case LoadKind::constant: {
            const double c = spec.value;
            return ScalarField::line([c, a, b](double x) { return x >= a && x <= b ? c : 0.0; }, {},
                                     {a, b}, tail);
        }
        case LoadKind::polynomial: {
            const std::vector<double> c = spec.coefficients;
            return ScalarField::line(
                [c, a, b](double x) {
                    if (x < a || x > b) return 0.0;
                    double v = 0.0;
                    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
                    return v;
                },
                {}, {a, b}, tail);
        }
        case LoadKind::sampled: {
            std::ifstream in(spec.path);
            if (!in) throw InputError("cannot read load samples from " + spec.path);
            std::vector<std::pair<double, double>> pts;
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                std::replace(line.begin(), line.end(), ',', ' ');
                std::istringstream row(line);
                double x = 0.0;
                double y = 0.0;
                if (!(row >> x >> y)) {
                    if (pts.empty()) continue;  // header
                    throw InputError("bad row in " + spec.path + ": " + line);
                }
                if (!std::isfinite(x) || !std::isfinite(y)) {
                    throw InputError("non-finite sample in " + spec.path);
                }
                pts.emplace_back(x, y);
            }
            if (pts.size() < 2) throw InputError(spec.path + " needs at least two samples");
            std::sort(pts.begin(), pts.end());
            return ScalarField::line(
                [pts, a, b](double x) {
                    if (x < a || x > b || x < pts.front().first || x > pts.back().first) return 0.0;
                    auto hi = std::upper_bound(pts.begin(), pts.end(), std::make_pair(x, -HUGE_VAL));
                    if (hi == pts.begin()) return pts.front().second;
                    if (hi == pts.end()) return pts.back().second;
                    const auto lo = hi - 1;
                    const double lam = (x - lo->first) / (hi->first - lo->first);
                    return (1.0 - lam) * lo->second + lam * hi->second;
                },
                {}, {a, b}, tail);
        }
    }
    throw DomainError("unknown load kind");
}

}  // namespace mixedlap
