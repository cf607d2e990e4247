#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hardy/errors.hpp"
#include "hardy/experiment.hpp"
#include "hardy/presets.hpp"

namespace fs = std::filesystem;
using hardy::cli::json;

namespace {

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

json load_spec(const std::optional<std::string>& path, const std::optional<std::string>& preset) {
  if (preset) {
    const auto text = hardy::cli::find_preset(*preset);
    if (!text) throw hardy::ValidationError("unknown preset '" + *preset + "' (see --list-presets)");
    return json::parse(*text);
  }
  std::ifstream in(*path);
  if (!in) throw hardy::ValidationError("cannot open spec file " + *path);
  return json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated Hardy-space operators and the Toeplitzness map Phi: experiment runner"};
  std::optional<std::string> spec_path, preset, seed_text;
  std::string out_dir = ".";
  std::string format = "both";
  bool no_timestamp = false, list = false, dump_operator = false;
  std::optional<std::string> print_preset;

  auto* spec_opt = app.add_option("--spec", spec_path, "experiment file (JSON)");
  auto* preset_opt = app.add_option("--preset", preset, "built-in experiment name");
  spec_opt->excludes(preset_opt);
  app.add_option("--out", out_dir, "output directory for report.json and series.csv");
  app.add_option("--seed", seed_text, "override the seed in params.seed");
  app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp field from report.json");
  app.add_option("--format", format, "outputs to write")->check(CLI::IsMember({"json", "csv", "both"}));
  app.add_flag("--list-presets", list, "print the built-in experiment names");
  app.add_option("--print-preset", print_preset, "print a built-in experiment file");
  app.add_flag("--dump-operator", dump_operator, "also write operator.json and operator.csv");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& p : hardy::cli::presets()) std::cout << p.name << '\n';
    return 0;
  }
  if (print_preset) {
    const auto text = hardy::cli::find_preset(*print_preset);
    if (!text) {
      std::cerr << "error: unknown preset '" << *print_preset << "'\n";
      return 2;
    }
    std::cout << *text << '\n';
    return 0;
  }
  if (!spec_path && !preset) {
    std::cerr << "error: one of --spec or --preset is required\n" << app.help();
    return 2;
  }

  try {
    json doc = load_spec(spec_path, preset);
    if (seed_text) {
      std::size_t used = 0;
      const unsigned long long seed = std::stoull(*seed_text, &used);
      if (used != seed_text->size()) throw hardy::ValidationError("--seed must be a non-negative integer");
      if (!doc.contains("params")) doc["params"] = json::object();
      doc["params"]["seed"] = seed;
    }
    const auto spec = hardy::cli::parse_spec(doc);
    const auto result = hardy::cli::run_experiment(spec, {.timestamp = !no_timestamp, .dump_operator = dump_operator});

    fs::create_directories(out_dir);
    if (format != "csv") write_file(fs::path(out_dir) / "report.json", result.report.dump(2) + "\n");
    if (format != "json") write_file(fs::path(out_dir) / "series.csv", result.csv);
    if (result.operator_dump) {
      write_file(fs::path(out_dir) / "operator.json", result.operator_dump->dump(2) + "\n");
      write_file(fs::path(out_dir) / "operator.csv", result.operator_csv);
    }
    std::cout << spec.name << ": outcome " << result.outcome << ", status " << result.report.at("status").get<std::string>()
              << '\n';
    return hardy::cli::exit_status(result);
  } catch (const hardy::TrustExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const hardy::ValidationError& e) {
    std::cerr << "error: invalid experiment: " << e.what() << '\n';
    return 2;
  } catch (const hardy::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
