// gaitcoach: batch analysis, the session service and the synthetic runner.

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gaitcoach/attributes/meta.hpp"
#include "gaitcoach/error.hpp"
#include "gaitcoach/motion/io.hpp"
#include "gaitcoach/motion/synth.hpp"
#include "gaitcoach/service/http_service.hpp"
#include "gaitcoach/service/pipeline.hpp"

namespace fs = std::filesystem;
using namespace gaitcoach;

namespace {

enum Exit { ok = 0, failure = 1, invalid = 2, pipeline = 3 };

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path, "cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

motion::MotionSequence load_motion(const std::string& path, const std::string& role) {
  try {
    return motion::parse_motion(slurp(path));
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(role, e.what());
  }
}

void spill(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

struct AnalyzeArgs {
  std::string sample, exemplar, attributes, out, animations;
  double threshold = 0.25;
};

int analyze(const AnalyzeArgs& args) {
  const auto sample = load_motion(args.sample, "sample");
  const auto exemplar = load_motion(args.exemplar, "exemplar");
  std::vector<attributes::AttributeMeta> user;
  if (!args.attributes.empty()) {
    const auto doc = nlohmann::json::parse(slurp(args.attributes), nullptr, false);
    if (doc.is_discarded()) throw ValidationError("attributes", "not valid JSON");
    user = attributes::metas_from_json(doc);
  }
  service::PipelineConfig cfg;
  cfg.comparison.threshold = args.threshold;
  const auto analysis = service::analyze(sample, exemplar, user, cfg);
  const std::string text = compare::serialize_report(analysis.report);
  if (args.out.empty()) {
    std::cout << text;
  } else {
    spill(args.out, text);
  }
  if (!args.animations.empty()) {
    fs::create_directories(args.animations);
    for (const auto& s : analysis.report.suggestions) {
      try {
        spill(fs::path(args.animations) / (s.id + ".json"), service::animation_document(analysis, s.id).dump());
      } catch (const Error& e) {
        std::cerr << "gaitcoach: no animation for " << s.id << ": " << e.what() << "\n";
      }
    }
  }
  return ok;
}

service::HttpService* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int serve(const std::string& listen, const std::string& store_dir, const std::string& static_dir) {
  const auto [host, port] = service::parse_listen_address(listen);
  service::SessionStore store(store_dir);
  std::optional<fs::path> mount;
  if (!static_dir.empty()) mount = static_dir;
  service::HttpService http(store, mount);
  g_server = &http;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "gaitcoach: serving on " << host << ":" << port << ", store " << store_dir << "\n";
  const bool bound = http.listen(host, port);
  g_server = nullptr;
  if (!bound) {
    std::cerr << "gaitcoach: cannot listen on " << listen << "\n";
    return failure;
  }
  return ok;
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compare a runner's pose sequence with an exemplar and suggest corrections"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run the pipeline once and write the report");
  analyze_cmd->add_option("--sample", an.sample, "Sample pose-sequence file")->required();
  analyze_cmd->add_option("--exemplar", an.exemplar, "Exemplar pose-sequence file")->required();
  analyze_cmd->add_option("--attributes", an.attributes, "Extra attribute documents (JSON array)");
  analyze_cmd->add_option("--threshold", an.threshold, "Significance threshold on relative error")
      ->capture_default_str();
  analyze_cmd->add_option("--out", an.out, "Report path (stdout when omitted)");
  analyze_cmd->add_option("--emit-animations", an.animations, "Directory for suggestion animations");

  std::string listen = env_or("GAITCOACH_LISTEN", "127.0.0.1:8080");
  std::string store = env_or("GAITCOACH_STORE", "sessions");
  std::string static_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP session service");
  serve_cmd->add_option("--listen", listen, "host:port (env GAITCOACH_LISTEN)")->capture_default_str();
  serve_cmd->add_option("--store", store, "Session directory (env GAITCOACH_STORE)")->capture_default_str();
  serve_cmd->add_option("--static", static_dir, "Directory served at / (studio bundle)");

  motion::GaitParams gp;
  std::string synth_out;
  bool still = false;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic running sequence");
  synth_cmd->add_option("--out", synth_out, "Output file (stdout when omitted)");
  synth_cmd->add_option("--cycles", gp.n_cycles, "Number of strides")->capture_default_str();
  synth_cmd->add_option("--fps", gp.fps, "Frames per second")->capture_default_str();
  synth_cmd->add_option("--cycle-duration", gp.cycle_duration, "Seconds per stride")->capture_default_str();
  synth_cmd->add_option("--stance", gp.stance_fraction, "Stance fraction per foot, below 0.5")->capture_default_str();
  synth_cmd->add_option("--knee-drive", gp.knee_drive, "Peak swing thigh angle (rad)")->capture_default_str();
  synth_cmd->add_option("--elbow-flexion", gp.elbow_flexion, "Elbow flexion (rad)")->capture_default_str();
  synth_cmd->add_option("--arm-swing", gp.arm_swing, "Arm swing amplitude (rad)")->capture_default_str();
  synth_cmd->add_option("--arm-cross", gp.arm_cross, "Inward arm yaw (rad)")->capture_default_str();
  synth_cmd->add_option("--lean", gp.torso_lean, "Forward trunk lean (rad)")->capture_default_str();
  synth_cmd->add_option("--foot-pitch", gp.foot_pitch, "Toe-down foot pitch (rad)")->capture_default_str();
  synth_cmd->add_option("--heading", gp.heading, "Travel yaw about +Y (rad)")->capture_default_str();
  synth_cmd->add_option("--scale", gp.body_scale, "Body scale")->capture_default_str();
  synth_cmd->add_flag("--still", still, "Motionless subject");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze_cmd) return analyze(an);
    if (*serve_cmd) return serve(listen, store, static_dir);
    if (*synth_cmd) {
      if (still) {
        const motion::GaitParams base = gp;
        gp = motion::GaitParams::still();
        gp.n_cycles = base.n_cycles;
        gp.fps = base.fps;
        gp.cycle_duration = base.cycle_duration;
      }
      const std::string text = motion::serialize_motion(motion::synth_gait(gp));
      if (synth_out.empty()) std::cout << text << "\n";
      else spill(synth_out, text);
      return ok;
    }
  } catch (const ValidationError& e) {
    std::cerr << "gaitcoach: invalid input: " << e.what() << "\n";
    for (const auto& i : e.issues()) std::cerr << "  " << i.field << ": " << i.message << "\n";
    return invalid;
  } catch (const PipelineError& e) {
    std::cerr << "gaitcoach: " << e.what() << (e.input().empty() ? "" : " (" + e.input() + ")") << "\n";
    return pipeline;
  } catch (const Error& e) {
    std::cerr << "gaitcoach: " << e.what() << "\n";
    const bool input_error = e.code() == ErrorCode::malformed_document || e.code() == ErrorCode::unknown_joint ||
                             e.code() == ErrorCode::invalid_rotation || e.code() == ErrorCode::invalid_skeleton ||
                             e.code() == ErrorCode::duplicate_name || e.code() == ErrorCode::invalid_argument;
    return input_error ? invalid : failure;
  } catch (const std::exception& e) {
    std::cerr << "gaitcoach: " << e.what() << "\n";
    return failure;
  }
  return failure;
}
