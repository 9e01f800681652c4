#ifndef QCARNOT_PARAMS_HPP
#define QCARNOT_PARAMS_HPP

#include <string>

#include "qcarnot/errors.hpp"

namespace qcarnot {

// Bath coupling strength. The cold bath may be ideal (gamma -> infinity),
// which selects the reversible-isotherm cold stroke; that branch is chosen
// by this type, never by comparing magnitudes.
class Coupling {
public:
    Coupling() : infinite_(true), value_(0.0) {}  // defaults to the ideal bath

    static Coupling finite(double gamma);
    static Coupling infinite() { return Coupling(true, 0.0); }

    bool is_infinite() const { return infinite_; }

    // Finite value; throws if the coupling is the infinite marker.
    double value() const;

private:
    Coupling(bool inf, double v) : infinite_(inf), value_(v) {}
    bool infinite_;
    double value_;
};

// Full physical configuration of the engine. Units: hbar = k_B = 1,
// temperatures and energy spacings in the same energy unit, couplings in
// inverse time.
struct EngineParams {
    double T_h;        // hot bath temperature
    double T_c;        // cold bath temperature, 0 < T_c < T_h
    double gamma_h;    // hot bath coupling
    Coupling gamma_c;  // cold bath coupling, finite or infinite
    double omega_h_i;  // hot stroke initial spacing
    double omega_h_f;  // hot stroke final spacing (engine mode: < omega_h_i)
};

struct DerivedParams {
    double eta_C;          // Carnot efficiency 1 - T_c/T_h
    double delta;          // compression ratio omega_h_f/omega_h_i
    double omega_c_i;      // cold stroke initial spacing omega_h_f*T_c/T_h
    double omega_c_f;      // cold stroke final spacing omega_h_i*T_c/T_h
    double t_r;            // hot relaxation time omega_h_i/(2*gamma_h*T_h)
    double gamma_tilde_h;  // 2*gamma_h*T_h/omega_h_i
    double gamma_tilde_c;  // 2*gamma_c*T_c/omega_c_i; +inf for ideal cold bath
};

// Checks the EngineParams invariants, throwing ValidationError with a
// descriptive message on the first violation.
void validate(const EngineParams& p);

// Adiabatic matching relations and derived scales. Pure; validates first.
DerivedParams derive(const EngineParams& p);

// Parses the JSON parameter block {"T_h":..,"T_c":..,"gamma_h":..,
// "gamma_c":<number or "inf">,"omega_h_i":..,"omega_h_f":..}.
EngineParams params_from_json(const std::string& json_text);

std::string params_to_json(const EngineParams& p);

} // namespace qcarnot

#endif
