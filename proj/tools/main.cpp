#include <string>

#include "CLI11.hpp"
#include "wlab/commands.hpp"

namespace {

void add_common(CLI::App* cmd, std::string* format, std::string* out) {
  cmd->add_option("--format", *format, "Output format: json, csv or pretty")
      ->capture_default_str();
  cmd->add_option("--out", *out, "Write the output to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-protocol laboratory: teleportation and dense coding "
               "over GHZ- and W-class channels"};
  app.require_subcommand(1);

  wlab::cli::TeleportOptions tele;
  std::string tele_out;
  double tele_tol = -1.0;
  auto* teleport = app.add_subcommand("teleport", "Run a teleportation protocol");
  teleport->add_option("--channel", tele.channel, "Channel selector")
      ->capture_default_str();
  teleport->add_option("--input", tele.input,
                       "Family coefficients alpha,beta")
      ->capture_default_str();
  teleport->add_option("--family", tele.family,
                       "Input family: auto, epr, ghz or w3")
      ->capture_default_str();
  teleport->add_option("--theta", tele.theta, "Measurement basis angle")
      ->capture_default_str();
  teleport->add_option("--theta2", tele.theta2,
                       "Second basis angle (four-qubit channel)")
      ->capture_default_str();
  teleport->add_option("--search", tele.search,
                       "Recovery search space (default pauli-phase-local)");
  teleport->add_option("--shots", tele.shots,
                       "Sample this many measurement shots");
  teleport->add_option("--seed", tele.seed, "RNG seed for sampling")
      ->capture_default_str();
  teleport->add_option("--tol-override", tele_tol,
                       "Fidelity tolerance override (testing only)");
  add_common(teleport, &tele.format, &tele_out);

  wlab::cli::DenseOptions dense;
  std::string dense_out;
  auto* dense_cmd = app.add_subcommand("dense", "Dense-coding round trip");
  dense_cmd->add_option("--message", dense.message, "Three-bit message")
      ->capture_default_str();
  dense_cmd->add_option("--channel", dense.channel, "Channel selector")
      ->capture_default_str();
  add_common(dense_cmd, &dense.format, &dense_out);

  wlab::cli::ProbeOptions probe;
  std::string probe_out;
  auto* probe_cmd = app.add_subcommand(
      "probe", "Compare closed-form outcome probabilities with simulation");
  probe_cmd->add_option("--channel", probe.channel, "Channel selector")
      ->capture_default_str();
  probe_cmd->add_option("--formula", probe.formula, "wclass or ghzclass")
      ->capture_default_str();
  probe_cmd->add_option("--input", probe.input, "Input amplitudes");
  probe_cmd->add_option("--theta", probe.theta, "Basis angle")
      ->capture_default_str();
  probe_cmd->add_option("--sweep-theta", probe.sweep_theta,
                        "Angle sweep start:end:points");
  add_common(probe_cmd, &probe.format, &probe_out);

  wlab::cli::ConvertOptions convert;
  std::string convert_out;
  auto* convert_cmd = app.add_subcommand(
      "convert", "Single-pair unitary convertibility verdict");
  convert_cmd->add_option("--src", convert.src, "Source GHZ-class selector")
      ->capture_default_str();
  convert_cmd->add_option("--dst", convert.dst, "Target GHZ-class selector")
      ->capture_default_str();
  convert_cmd->add_option("--samples", convert.samples,
                          "Unitary samples for the refutation")
      ->capture_default_str();
  convert_cmd->add_option("--seed", convert.seed, "RNG seed")
      ->capture_default_str();
  add_common(convert_cmd, &convert.format, &convert_out);

  wlab::cli::OpticalOptions optical;
  std::string optical_out;
  auto* optical_cmd = app.add_subcommand(
      "optical", "Truncated three-mode W-state preparation");
  optical_cmd->add_option("--g", optical.g, "Couplings g1,g2,g3")
      ->capture_default_str();
  optical_cmd->add_option("--pump", optical.pump, "Pump amplitude")
      ->capture_default_str();
  optical_cmd->add_option("--q", optical.q, "Coherence coefficient")
      ->capture_default_str();
  optical_cmd->add_option("--t", optical.t, "Interaction time")
      ->capture_default_str();
  add_common(optical_cmd, &optical.format, &optical_out);

  wlab::cli::FindRecoveryOptions recover;
  std::string recover_out;
  auto* recover_cmd = app.add_subcommand(
      "find-recovery", "Brute-force per-outcome recovery-operator search");
  recover_cmd->add_option("--channel", recover.channel, "Channel selector")
      ->capture_default_str();
  recover_cmd->add_option("--theta", recover.theta, "Basis angle")
      ->capture_default_str();
  recover_cmd->add_option("--theta2", recover.theta2,
                          "Second basis angle (four-qubit channel)")
      ->capture_default_str();
  recover_cmd->add_option("--search", recover.search, "Search space")
      ->capture_default_str();
  recover_cmd->add_option("--samples", recover.samples,
                          "Samples for the sampled spaces")
      ->capture_default_str();
  recover_cmd->add_option("--seed", recover.seed, "RNG seed")
      ->capture_default_str();
  add_common(recover_cmd, &recover.format, &recover_out);

  wlab::cli::VerifyOptions verify;
  std::string verify_out;
  auto* verify_cmd =
      app.add_subcommand("verify", "Run the full acceptance suite");
  add_common(verify_cmd, &verify.format, &verify_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
  }

  if (teleport->parsed()) {
    if (tele_tol > 0.0) tele.tol_override = tele_tol;
    return wlab::cli::deliver(wlab::cli::cmd_teleport(tele), tele_out);
  }
  if (dense_cmd->parsed()) {
    return wlab::cli::deliver(wlab::cli::cmd_dense(dense), dense_out);
  }
  if (probe_cmd->parsed()) {
    return wlab::cli::deliver(wlab::cli::cmd_probe(probe), probe_out);
  }
  if (convert_cmd->parsed()) {
    return wlab::cli::deliver(wlab::cli::cmd_convert(convert), convert_out);
  }
  if (optical_cmd->parsed()) {
    return wlab::cli::deliver(wlab::cli::cmd_optical(optical), optical_out);
  }
  if (recover_cmd->parsed()) {
    return wlab::cli::deliver(wlab::cli::cmd_find_recovery(recover),
                              recover_out);
  }
  if (verify_cmd->parsed()) {
    return wlab::cli::deliver(wlab::cli::cmd_verify(verify), verify_out);
  }
  return 2;
}
