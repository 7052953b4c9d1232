#include "rs/config.hpp"

#include "rs/errors.hpp"

namespace rs {

void Config::set_tolerance(const std::string& name, double value) {
    if (value <= 0) throw ArgumentError("tolerance '" + name + "' must be positive");
    if (name == "rank_tol_rel") rank_tol_rel = value;
    else if (name == "dual_tol") dual_tol = value;
    else if (name == "projective_tol") projective_tol = value;
    else if (name == "membership_slack") membership_slack = value;
    else if (name == "tight_residual") tight_residual = value;
    else if (name == "commute_tol") commute_tol = value;
    else if (name == "construct_residual") construct_residual = value;
    else if (name == "lambda_floor_rel") lambda_floor_rel = value;
    else throw ArgumentError("unknown tolerance name: " + name);
}

std::map<std::string, double> Config::tolerances() const {
    return {
        {"rank_tol_rel", rank_tol_rel},
        {"dual_tol", dual_tol},
        {"projective_tol", projective_tol},
        {"membership_slack", membership_slack},
        {"tight_residual", tight_residual},
        {"commute_tol", commute_tol},
        {"construct_residual", construct_residual},
        {"lambda_floor_rel", lambda_floor_rel},
    };
}

const Config& default_config() {
    static const Config cfg{};
    return cfg;
}

}  // namespace rs
