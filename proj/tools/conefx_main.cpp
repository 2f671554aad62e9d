#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "conefx/construction.hpp"
#include "conefx/mesh.hpp"
#include "conefx/reporting.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::vector<double> parse_eps(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0') {
      throw conefx::InputError("cannot parse refinement level '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw conefx::InputError("--eps needs at least one level");
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

void report_failures(const conefx::Json& report) {
  if (!report.contains("failed_sections")) return;
  for (const auto& name : report.at("failed_sections")) {
    std::cerr << "failed section: " << name.get<std::string>() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Faces, exposure and niceness checks for a four-dimensional cone"};
  app.require_subcommand(1);

  conefx::RunConfig config;
  std::string eps_text = "1e-1,1e-2,1e-3,1e-4";
  std::string out_path;
  std::string which = "C";
  int mesh_samples = 64;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--samples", config.samples_per_curve, "samples per curve")
        ->capture_default_str();
    cmd->add_option("--out", out_path, "output file (default stdout)");
  };

  auto* verify = app.add_subcommand("verify", "run every check and emit a JSON report");
  add_common(verify);
  verify->add_option("--theta-grid", config.theta_grid_size, "theta grid size")
      ->capture_default_str();
  verify->add_option("--tol", config.eq_abs, "absolute equality tolerance")
      ->capture_default_str();
  verify->add_option("--eps", eps_text, "comma-separated refinement levels")
      ->capture_default_str();

  auto* faces = app.add_subcommand("faces", "emit the face atlas as JSON");
  add_common(faces);
  faces->add_option("--theta-grid", config.theta_grid_size, "theta grid size")
      ->capture_default_str();
  faces->add_option("--tol", config.eq_abs, "absolute equality tolerance")
      ->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "emit the lambda divergence table as CSV");
  add_common(sweep);
  sweep->add_option("--eps", eps_text, "comma-separated refinement levels")
      ->capture_default_str();
  sweep->add_flag("--control", config.control, "sweep the polyhedral control cone");

  auto* mesh = app.add_subcommand("mesh", "emit a boundary mesh of C or C' as OBJ");
  mesh->add_option("--which", which, "body: C or Cprime")
      ->check(CLI::IsMember({"C", "Cprime"}))
      ->capture_default_str();
  mesh->add_option("--samples", mesh_samples, "samples per curve")->capture_default_str();
  mesh->add_option("--out", out_path, "output file (default stdout)");

  auto* nice3d = app.add_subcommand("nice3d", "emit the 3D projection checks as JSON");
  nice3d->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed() || sweep->parsed()) config.eps_list = parse_eps(eps_text);

    if (verify->parsed()) {
      const conefx::Json report = conefx::run_verify(config);
      emit(report.dump(2) + "\n", out_path);
      report_failures(report);
      return report.at("overall") == "pass" ? 0 : kExitFail;
    }
    if (faces->parsed()) {
      const conefx::Json atlas = conefx::face_atlas(config);
      emit(atlas.dump(2) + "\n", out_path);
      return atlas.at("overall") == "pass" ? 0 : kExitFail;
    }
    if (sweep->parsed()) {
      emit(conefx::sweep_csv(config), out_path);
      return 0;
    }
    if (mesh->parsed()) {
      const auto variant =
          which == "C" ? conefx::BodyVariant::kRaw : conefx::BodyVariant::kShifted;
      const conefx::TriangleMesh m = conefx::build_mesh(variant, mesh_samples);
      std::ostringstream os;
      conefx::write_obj(m, os);
      emit(os.str(), out_path);
      return 0;
    }
    if (nice3d->parsed()) {
      conefx::Json report = conefx::nice3d_report();
      report["schema"] = 1;
      emit(report.dump(2) + "\n", out_path);
      return report.at("pass").get<bool>() ? 0 : kExitFail;
    }
  } catch (const conefx::InputError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
