// disclination: command-line front end for the point-disclination library.
//
//   disclination verify    --profile exp --amplitude 1.5707963 --rate 1 --seed 7
//   disclination sample    --profile exp --section x2zero --out field.csv
//   disclination transport --profile exp --from 1,1,1 --path ray
//   disclination classify  --profile exp
//
// Reports go to stdout as JSON, human summaries to stderr.
// Exit codes: 0 pass, 1 usage/parse error, 2 check failure, 3 I/O error.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "disclination/commands.hpp"

namespace dc = disclination::cli;
using disclination::Vec3;

namespace {

Vec3 parse_vec3(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  if (v.size() != 3) throw disclination::PreconditionError("expected x,y,z but got '" + text + "'");
  return {v[0], v[1], v[2]};
}

std::vector<Vec3> parse_vertices(const std::string& text) {
  std::vector<Vec3> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (!item.empty()) out.push_back(parse_vec3(item));
  return out;
}

struct ProfileFlags {
  std::string kind = "exp";
  double amplitude = std::numbers::pi / 2.0;
  double rate = 1.0;
  std::string expression;
  double f_inf = 0.0;
  std::optional<double> f_zero;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--profile", kind, "Profile family")
        ->check(CLI::IsMember({"zero", "exp", "gauss", "rational", "custom"}))
        ->capture_default_str();
    cmd->add_option("--amplitude", amplitude, "Profile amplitude f(0)")->capture_default_str();
    cmd->add_option("--rate", rate, "Decay rate (1/scale for rational)")->capture_default_str();
    cmd->add_option("--expr", expression, "Custom f(r) using + - * / ^ exp sin cos pi r");
    cmd->add_option("--f-inf", f_inf, "Declared f(infinity) for custom profiles")
        ->capture_default_str();
    cmd->add_option("--f-zero", f_zero, "Declared f(0) for custom profiles");
  }

  dc::ProfileSpec spec() const {
    static const std::map<std::string, dc::ProfileKind> kinds{
        {"zero", dc::ProfileKind::Zero},         {"exp", dc::ProfileKind::ExpDecay},
        {"gauss", dc::ProfileKind::Gauss},       {"rational", dc::ProfileKind::Rational},
        {"custom", dc::ProfileKind::Custom}};
    dc::ProfileSpec s;
    s.kind = kinds.at(kind);
    s.amplitude = amplitude;
    s.rate = rate;
    s.expression = expression;
    s.f_at_infinity = f_inf;
    s.f_at_zero = f_zero;
    return s;
  }
};

int emit(const dc::CommandResult& r, const std::string& out_path = {}) {
  std::cerr << r.summary;
  const std::string text = r.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return r.exit_code;
  }
  std::ofstream os(out_path, std::ios::binary | std::ios::trunc);
  os << text;
  if (!os) {
    std::cerr << "cannot write " << out_path << '\n';
    return dc::exit_code::kIo;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point disclinations from flat spherically symmetric SO(3) connections"};
  app.require_subcommand(1);

  ProfileFlags profile;

  auto* verify = app.add_subcommand("verify", "Run the flatness and transport checks");
  profile.add_to(verify);
  unsigned seed = 1;
  int npoints = 100;
  verify->add_option("--seed", seed, "Random seed")->capture_default_str();
  verify->add_option("--npoints", npoints, "Random sample points")->capture_default_str();

  auto* sample = app.add_subcommand("sample", "Sample the director field on a grid");
  profile.add_to(sample);
  disclination::SampleGridSpec grid;
  std::string section = "x2zero", construction = "sphersym", format = "csv", out;
  sample->add_option("--section", section)
      ->check(CLI::IsMember({"x2zero", "x3zero", "volume"}))
      ->capture_default_str();
  sample->add_option("--extent", grid.extent, "Grid half-width")->capture_default_str();
  sample->add_option("--resolution", grid.resolution, "Points per axis")->capture_default_str();
  sample->add_option("--exclusion", grid.exclusion_radius, "Skip points with r below this")
      ->capture_default_str();
  sample->add_option("--construction", construction)
      ->check(CLI::IsMember({"sphersym", "hedgehog"}))
      ->capture_default_str();
  sample->add_option("--out", out, "Output file")->required();
  sample->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  auto* transport = app.add_subcommand("transport", "Parallel-transport the frame along a path");
  profile.add_to(transport);
  std::string from = "1,1,1", path_kind = "ray", via, transport_out;
  transport->add_option("--from", from, "Start point x,y,z")->capture_default_str();
  transport->add_option("--path", path_kind)
      ->check(CLI::IsMember({"ray", "polyline"}))
      ->capture_default_str();
  transport->add_option("--via", via, "Polyline vertices after --from, 'x,y,z;x,y,z'");
  transport->add_option("--out", transport_out, "Write the JSON report here instead of stdout");

  auto* classify = app.add_subcommand("classify", "Classify the origin singularity");
  profile.add_to(classify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return dc::exit_code::kUsage;
  }

  try {
    const dc::ProfileSpec spec = profile.spec();
    if (verify->parsed()) return emit(dc::cmd_verify(spec, seed, npoints));

    if (sample->parsed()) {
      grid.section = section == "x2zero"   ? disclination::Section::PlaneX2Zero
                     : section == "x3zero" ? disclination::Section::PlaneX3Zero
                                           : disclination::Section::Volume;
      const auto c = construction == "hedgehog"
                         ? disclination::DirectorField::Construction::Hedgehog
                         : disclination::DirectorField::Construction::SpherSym;
      return emit(dc::cmd_sample(spec, grid, c, out,
                                 format == "json" ? dc::OutputFormat::Json : dc::OutputFormat::Csv));
    }

    if (transport->parsed()) {
      dc::PathSpec path;
      path.kind = path_kind == "ray" ? dc::PathSpec::Kind::Ray : dc::PathSpec::Kind::Polyline;
      path.vertices = parse_vertices(via);
      return emit(dc::cmd_transport(spec, parse_vec3(from), path), transport_out);
    }

    if (classify->parsed()) return emit(dc::cmd_classify(spec));
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dc::exit_code::kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dc::exit_code::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dc::exit_code::kCheckFailed;
  }
  return dc::exit_code::kUsage;
}
