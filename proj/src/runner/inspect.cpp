#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "entangle/runner.hpp"

namespace entangle {

namespace {

constexpr std::uint64_t kInspectStream = 0;

} // namespace

InspectReport inspect_state(const DensityMatrix& rho) {
  return {rho,
          entanglement_of_formation(rho),
          concurrence(rho),
          participation_ratio(rho),
          von_neumann_entropy(rho),
          q_moment(rho, 2.0),
          q_moment(rho, 3.0),
          is_ppt_separable(rho),
          min_partial_transpose_eigenvalue(rho),
          delta_e(Gate::cnot(), rho),
          delta_e(parse_gate("theta:pi/4"), rho)};
}

std::string InspectReport::format() const {
  std::string s;
  auto line = [&](std::string_view name, double v) { s += fmt::format("{} = {}\n", name, format_number(v)); };
  line("E", entanglement);
  line("C", concurrence);
  line("R", participation_ratio);
  line("S1", von_neumann_entropy);
  line("omega_2", omega2);
  line("omega_3", omega3);
  s += fmt::format("PPT = {}\n", ppt ? "true" : "false");
  line("min_partial_transpose_eigenvalue", min_pt_eigenvalue);
  line("E_final_cnot", cnot.e_final);
  line("dE_cnot", cnot.delta);
  line("E_final_theta_pi_4", theta_pi_4.e_final);
  line("dE_theta_pi_4", theta_pi_4.delta);
  return s;
}

DensityMatrix load_state_source(std::string_view source, std::uint64_t seed) {
  if (source == "random-pure") {
    RngStream rng(seed, kInspectStream);
    return sample_state(rng, Ensemble::Pure);
  }
  if (source == "random-mixed") {
    RngStream rng(seed, kInspectStream);
    return sample_state(rng, Ensemble::All);
  }
  const std::string path(source);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open state file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return validate(parse_matrix(text.str()));
}

} // namespace entangle
