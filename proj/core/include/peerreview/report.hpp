#pragma once

#include <string>

#include "peerreview/editor_objective.hpp"
#include "peerreview/mc_validator.hpp"
#include "peerreview/reform_solver.hpp"
#include "peerreview/sweep_engine.hpp"

// JSON renderings of solver results (pretty printed, 12 significant digits).
namespace peerreview::report {

std::string to_json(const reform::ReformSolution& s);
std::string to_json(const reform::PremiseReport& p);
std::string to_json(const reform::RestorationResult& r);
std::string to_json(const editor::Misalignment& m);
std::string to_json(const sweep::BaselineReport& b);

}  // namespace peerreview::report
