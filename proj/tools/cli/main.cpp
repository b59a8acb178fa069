#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "entwined/error.hpp"
#include "entwined/io.hpp"
#include "entwined/service.hpp"

namespace {

using entwined::Error;
using entwined::ErrorKind;
using nlohmann::json;
namespace svc = entwined::service;

struct Globals {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string format = "human";
  std::string snapshot;
};

void emit(const Globals& g, const json& document) {
  if (g.format == "structured") {
    std::cout << document.dump(2) << '\n';
  } else {
    std::cout << svc::render_human(document);
  }
}

entwined::Scenario require_scenario(const Globals& g) {
  if (g.scenario.empty()) {
    throw Error(ErrorKind::ValidationError, "--scenario is required", "--scenario");
  }
  return entwined::scenario_from_name_or_file(g.scenario);
}

std::string require_snapshot(const Globals& g) {
  if (g.snapshot.empty()) {
    throw Error(ErrorKind::ValidationError, "--snapshot is required", "--snapshot");
  }
  return g.snapshot;
}

// Existing snapshot, or a fresh session from --scenario / --seed.
entwined::Session open_session(const Globals& g, bool& created) {
  const auto path = require_snapshot(g);
  created = !std::filesystem::exists(path);
  if (!created) {
    return entwined::io::session_from_snapshot(entwined::io::read_json_file(path));
  }
  return entwined::new_session(require_scenario(g), g.seed.value_or(entwined::fresh_seed()));
}

std::vector<entwined::QuestionRef> parse_questions(const std::vector<std::string>& args) {
  std::vector<entwined::QuestionRef> out;
  for (const auto& a : args) {
    out.push_back(svc::parse_question_arg(a));
  }
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    if (comma > pos) {
      out.push_back(text.substr(pos, comma - pos));
    }
    pos = comma + 1;
  }
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"entwined: Lie-algebraic question/answer models"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--scenario", g.scenario, "built-in scenario name or scenario document path");
  app.add_option("--seed", g.seed, "RNG seed (session seed for new sessions, draw seed for ask)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"human", "structured"}));
  app.add_option("--snapshot", g.snapshot, "session snapshot file");

  std::string algebra;
  std::string rep_name;
  auto* info = app.add_subcommand("info", "algebra and representation metadata");
  info->add_option("--algebra", algebra, "algebra tag (su2, su3, su(n))");
  info->add_option("--rep", rep_name, "irrep name; defaults to the fundamental");

  std::string generators_file;
  auto* verify = app.add_subcommand("verify", "generator-set and Jacobi checks");
  verify->add_option("--generators", generators_file, "generator set document");
  verify->add_option("--algebra", algebra, "check the fundamental of this algebra");

  std::vector<std::string> factors;
  bool with_isometries = false;
  auto* decompose = app.add_subcommand("decompose", "decompose a tensor product into irreps");
  decompose->add_option("--algebra", algebra, "algebra tag")->required();
  decompose->add_option("--tensor", factors, "irrep names of the factors")->required()->expected(1, -1);
  decompose->add_flag("--with-isometries", with_isometries, "include the block isometries");

  std::vector<std::string> questions;
  auto* peek = app.add_subcommand("peek", "outcome distribution without measuring");
  peek->add_option("--question", questions, "question name or comma-separated coefficients; repeat for a joint peek")
      ->required();

  std::string question;
  auto* ask = app.add_subcommand("ask", "measure and update the snapshot");
  ask->add_option("--question", question, "question name or comma-separated coefficients")->required();

  double theta = 0.0;
  auto* evolve = app.add_subcommand("evolve", "unitary evolution exp(-i theta H)");
  evolve->add_option("--question", question, "Hamiltonian question")->required();
  evolve->add_option("--theta", theta, "angle")->required();

  auto* reset = app.add_subcommand("reset", "restore the initial state and record a reset event");

  std::string chain;
  std::uint64_t trials = 0;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo measurement chains");
  simulate->add_option("--chain", chain, "comma-separated question names")->required();
  simulate->add_option("--trials", trials, "number of chains")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  svc::ServerOptions server;
  std::string snapshot_dir;
  auto* serve = app.add_subcommand("serve", "HTTP session service");
  serve->add_option("--host", server.host, "bind address");
  serve->add_option("--port", server.port, "port");
  serve->add_option("--allow-origin", server.allow_origin, "CORS origin");
  serve->add_option("--snapshot-dir", snapshot_dir, "load sessions on start, save on shutdown");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);
    }
    std::cerr << svc::ApiError{svc::ApiCode::Validation, e.what(), ""}.to_json().dump() << '\n';
    return 1;
  }

  try {
    if (info->parsed()) {
      if (!g.scenario.empty()) {
        emit(g, svc::scenario_info(entwined::scenario_from_name_or_file(g.scenario)));
      } else {
        if (algebra.empty()) {
          throw Error(ErrorKind::ValidationError, "info needs --scenario or --algebra", "--algebra");
        }
        const int n = entwined::su_order(entwined::canonical_algebra_id(algebra));
        emit(g, svc::algebra_info(svc::irrep_by_name(algebra, rep_name.empty() ? std::to_string(n) : rep_name)));
      }
    } else if (verify->parsed()) {
      entwined::GeneratorSet rep;
      if (!generators_file.empty()) {
        rep = entwined::io::generator_set_from_json(entwined::io::read_json_file(generators_file));
      } else if (!algebra.empty()) {
        rep = entwined::su_fundamental(entwined::su_order(entwined::canonical_algebra_id(algebra)));
      } else {
        rep = require_scenario(g).representation();
      }
      const auto doc = svc::verify_document(rep);
      emit(g, doc);
      return doc.at("ok").get<bool>() ? 0 : 1;
    } else if (decompose->parsed()) {
      emit(g, svc::decompose_document(algebra, factors, with_isometries));
    } else if (peek->parsed()) {
      bool created = false;
      const auto session = open_session(g, created);
      emit(g, svc::peek_document(session, parse_questions(questions)));
      if (created) {
        entwined::io::write_json_file(g.snapshot, entwined::io::session_snapshot(session));
      }
    } else if (ask->parsed()) {
      bool created = false;
      auto session = open_session(g, created);
      const auto record = session.ask(svc::parse_question_arg(question), created ? std::nullopt : g.seed);
      entwined::io::write_json_file(g.snapshot, entwined::io::session_snapshot(session));
      emit(g, svc::ask_document(record, session));
    } else if (evolve->parsed()) {
      bool created = false;
      auto session = open_session(g, created);
      session.evolve(svc::parse_question_arg(question), theta);
      entwined::io::write_json_file(g.snapshot, entwined::io::session_snapshot(session));
      emit(g, {{"state_summary", svc::state_summary(session)},
               {"event", entwined::io::to_json(session.history().back())}});
    } else if (reset->parsed()) {
      bool created = false;
      auto session = open_session(g, created);
      session.reset();
      entwined::io::write_json_file(g.snapshot, entwined::io::session_snapshot(session));
      emit(g, svc::session_document(session));
    } else if (simulate->parsed()) {
      std::optional<entwined::Session> from_snapshot;
      if (!g.snapshot.empty() && std::filesystem::exists(g.snapshot)) {
        from_snapshot = entwined::io::session_from_snapshot(entwined::io::read_json_file(g.snapshot));
      }
      const auto scenario = from_snapshot ? from_snapshot->scenario() : require_scenario(g);
      const auto initial = from_snapshot ? from_snapshot->state() : scenario.initial_state();
      const auto names = split_list(chain);
      std::vector<entwined::Observable> qs;
      for (const auto& name : names) {
        qs.push_back(scenario.resolve(svc::parse_question_arg(name)));
      }
      const auto seed = g.seed.value_or(entwined::fresh_seed());
      emit(g, entwined::io::to_json(entwined::simulate_sequence(initial, qs, trials, seed, names, threads)));
    } else if (serve->parsed()) {
      if (!snapshot_dir.empty()) {
        server.snapshot_dir = snapshot_dir;
      }
      svc::Service service;
      return svc::serve(service, server);
    }
  } catch (...) {
    const auto err = svc::classify_current();
    std::cerr << err.to_json().dump() << '\n';
    return svc::exit_code(err.code);
  }
  return 0;
}
