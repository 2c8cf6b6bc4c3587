#ifndef ERGOPT_SERIALIZE_HPP
#define ERGOPT_SERIALIZE_HPP

#include <string>

#include "ergopt/experiments.hpp"
#include "ergopt/markov.hpp"
#include "ergopt/subaction.hpp"

namespace ergopt {

// JSON / CSV wire formats. Floats in CSV carry 12 significant digits.

std::string orbit_json(const PeriodicOrbit& orbit);
std::string beta_report_json(const BetaReport& report);
std::string support_json(const SupportCandidate& sc);
std::string support_csv(const SupportCandidate& sc);
std::string subaction_csv(const SubActionTable& table);
std::string subaction_json(const SubActionTable& table);
std::string violation_report_json(const ViolationReport& report);
std::string markov_cover_json(const MarkovCover& cover);
std::string locking_report_json(const LockingReport& report);
std::string locking_report_csv(const LockingReport& report);
std::string gamma_scaling_json(const GammaScalingResult& result);
std::string gamma_scaling_csv(const GammaScalingResult& result);
std::string subordination_json(const SubordinationReport& report);

}  // namespace ergopt

#endif
