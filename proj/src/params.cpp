#include "qcarnot/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace qcarnot {

Coupling Coupling::finite(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ValidationError("coupling strength must be a positive finite number, got " +
                              std::to_string(gamma));
    return Coupling(false, gamma);
}

double Coupling::value() const {
    if (infinite_)
        throw ValidationError("coupling is the infinite marker; no finite value");
    return value_;
}

void validate(const EngineParams& p) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            std::ostringstream os;
            os << name << " must be positive and finite, got " << v;
            throw ValidationError(os.str());
        }
    };
    positive(p.T_h, "T_h");
    positive(p.T_c, "T_c");
    positive(p.gamma_h, "gamma_h");
    positive(p.omega_h_i, "omega_h_i");
    positive(p.omega_h_f, "omega_h_f");
    if (!(p.T_c < p.T_h))
        throw ValidationError("need 0 < T_c < T_h, got T_c = " + std::to_string(p.T_c) +
                              ", T_h = " + std::to_string(p.T_h));
    if (p.omega_h_f == p.omega_h_i)
        throw ValidationError("omega_h_f must differ from omega_h_i (no stroke otherwise)");
}

DerivedParams derive(const EngineParams& p) {
    validate(p);
    DerivedParams d;
    d.eta_C = 1.0 - p.T_c / p.T_h;
    d.delta = p.omega_h_f / p.omega_h_i;
    d.omega_c_i = p.omega_h_f * p.T_c / p.T_h;
    d.omega_c_f = p.omega_h_i * p.T_c / p.T_h;
    d.t_r = p.omega_h_i / (2.0 * p.gamma_h * p.T_h);
    d.gamma_tilde_h = 2.0 * p.gamma_h * p.T_h / p.omega_h_i;
    d.gamma_tilde_c = p.gamma_c.is_infinite()
                          ? std::numeric_limits<double>::infinity()
                          : 2.0 * p.gamma_c.value() * p.T_c / d.omega_c_i;
    return d;
}

EngineParams params_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad parameter JSON: ") + e.what());
    }
    auto num = [&](const char* key) -> double {
        if (!j.contains(key))
            throw ValidationError(std::string("parameter JSON missing field \"") + key + "\"");
        if (!j.at(key).is_number())
            throw ValidationError(std::string("field \"") + key + "\" must be a number");
        return j.at(key).get<double>();
    };
    Coupling gc = Coupling::infinite();
    if (!j.contains("gamma_c"))
        throw ValidationError("parameter JSON missing field \"gamma_c\"");
    if (j.at("gamma_c").is_string()) {
        if (j.at("gamma_c").get<std::string>() != "inf")
            throw ValidationError("gamma_c must be a number or the string \"inf\"");
    } else if (j.at("gamma_c").is_number()) {
        gc = Coupling::finite(j.at("gamma_c").get<double>());
    } else {
        throw ValidationError("gamma_c must be a number or the string \"inf\"");
    }
    EngineParams p{num("T_h"), num("T_c"), num("gamma_h"), gc,
                   num("omega_h_i"), num("omega_h_f")};
    validate(p);
    return p;
}

std::string params_to_json(const EngineParams& p) {
    nlohmann::json j;
    j["T_h"] = p.T_h;
    j["T_c"] = p.T_c;
    j["gamma_h"] = p.gamma_h;
    if (p.gamma_c.is_infinite())
        j["gamma_c"] = "inf";
    else
        j["gamma_c"] = p.gamma_c.value();
    j["omega_h_i"] = p.omega_h_i;
    j["omega_h_f"] = p.omega_h_f;
    return j.dump();
}

} // namespace qcarnot
