#include "CLI11.hpp"
#include "report.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using qcf::cli::Json;

struct Invocation {
  std::string command;
  std::string input;
  std::string output;
  qcf::cli::Options options;
};

int emit(const Invocation& inv, const Json& report) {
  const std::string text = report.dump(2) + "\n";
  if (inv.output.empty() || inv.output == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(inv.output, std::ios::binary);
  if (!out) {
    std::cerr << "qcf: cannot write '" << inv.output << "'\n";
    return 1;
  }
  out << text;
  return 0;
}

Json error_report(const Invocation& inv, Json diagnostics) {
  return {{"command", inv.command}, {"ok", false}, {"diagnostics", std::move(diagnostics)}};
}

int run(const Invocation& inv) {
  namespace fs = std::filesystem;
  std::string text;
  fs::path base = ".";
  if (inv.input.empty() || inv.input == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(inv.input, std::ios::binary);
    if (!in) {
      std::cerr << "qcf: cannot read '" << inv.input << "'\n";
      emit(inv, error_report(inv, Json::array({{{"kind", "io"}, {"message", "cannot read " + inv.input}}})));
      return 1;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    base = fs::path(inv.input).parent_path();
    if (base.empty()) base = ".";
  }

  try {
    const qcf::dsl::Model model = qcf::dsl::resolve(qcf::dsl::parse(text), base);
    qcf::cli::check_targets(model, inv.options);
    const auto& o = inv.options;
    Json report{{"command", inv.command}, {"ok", true}};
    if (inv.command == "forms") {
      report["seed"] = o.seed;
      report["bound"] = o.bound;
    }
    if (inv.command == "frobenius" && o.margin) report["window_margin"] = *o.margin;
    if (inv.command == "validate") {
      report["results"] = qcf::cli::validate_report(model, o);
    } else if (inv.command == "forms") {
      report["results"] = qcf::cli::forms_report(model, o);
    } else if (inv.command == "frobenius") {
      report["results"] = qcf::cli::frobenius_report(model, o);
    } else if (inv.command == "classify") {
      Json classes;
      report["results"] = qcf::cli::classify_report(model, o, classes);
      report["isomorphism_classes"] = classes;
    } else if (inv.command == "embed") {
      report["results"] = qcf::cli::embed_report(model, o);
    } else if (inv.command == "tensor") {
      report["results"] = qcf::cli::tensor_report(model, o);
    } else if (inv.command == "hopf") {
      report["results"] = qcf::cli::hopf_report(model, o);
    } else {
      report["results"] = qcf::cli::hopf_verify_report(model, o);
    }
    return emit(inv, report);
  } catch (const qcf::dsl::DslError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << inv.input << ":" << d.to_string() << "\n";
    emit(inv, error_report(inv, qcf::cli::diagnostics(e.diagnostics())));
    return 1;
  } catch (const qcf::cli::InputError& e) {
    std::cerr << "qcf: " << e.what() << "\n";
    emit(inv, error_report(inv, Json::array({{{"kind", "input"}, {"message", e.what()}}})));
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "qcf: " << e.what() << "\n";
    emit(inv, error_report(inv, Json::array({{{"kind", "validation"}, {"message", e.what()}}})));
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Co-Frobenius analysis of path and incidence coalgebras"};
  app.require_subcommand(1);
  Invocation inv;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"validate", "check every declaration and summarize it"},
      {"forms", "closed-form balanced bilinear forms against the brute-force solution space"},
      {"frobenius", "left and right co-Frobenius verdicts with witnesses"},
      {"classify", "canonical decomposition and Hopf admissibility"},
      {"embed", "embedding of incidence coalgebras into Hasse-quiver path coalgebras"},
      {"tensor", "tensor isomorphism for consecutive pairs of posets"},
      {"hopf", "build the Hopf algebras declared in hopf blocks"},
      {"hopf-verify", "check every Hopf algebra axiom on the declared algebras"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input,--input,-i", inv.input, "DSL document (default: stdin)");
    sub->add_option("--output,-o", inv.output, "write the JSON report here (default: stdout)");
    sub->add_option("--target,-t", inv.options.targets, "restrict to these declaration names");
    sub->add_option("--seed", inv.options.seed, "seed for randomized choices (forms)");
    sub->add_option("--bound", inv.options.bound, "largest dimension solved by brute force")->check(CLI::PositiveNumber);
    sub->add_option("--window-margin", inv.options.margin, "minimum distance from the window edges (frobenius)")
        ->check(CLI::NonNegativeNumber);
    sub->callback([&inv, n = name] { inv.command = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return run(inv);
}
