// Copyright 2026 The composeqa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cqa/cli.h"

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cqa/engine.h"
#include "cqa/errors.h"
#include "cqa/oracle.h"
#include "cqa/text.h"

namespace cqa {
namespace {

struct RunConfig {
  std::string scene;
  std::string kb;
  std::string priors;
  std::string profile;
  bool explain = false;
  bool no_alternatives = false;
  bool no_elaborations = false;
  bool trace = false;
  bool dump_graph = false;
  std::string format = "text";
};

void AddCommon(CLI::App* cmd, RunConfig* c, bool scene_required) {
  auto* scene = cmd->add_option("--scene", c->scene, "scene JSON file");
  if (scene_required) scene->required();
  cmd->add_option("--kb", c->kb, "knowledge base TSV");
  cmd->add_option("--priors", c->priors, "relation priors JSON");
  cmd->add_option("--profile", c->profile, "detector profile JSON");
  cmd->add_flag("--explain", c->explain, "print the summary and diagnostics");
  cmd->add_flag("--no-alternatives", c->no_alternatives, "do not search for alternatives");
  cmd->add_flag("--no-elaborations", c->no_elaborations, "omit elaborations");
  cmd->add_flag("--trace", c->trace, "print the evaluation trace");
  cmd->add_flag("--dump-graph", c->dump_graph, "print the question graph");
  cmd->add_option("--format", c->format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

Engine MakeEngine(const RunConfig& c) {
  EngineOptions o;
  o.alternatives = !c.no_alternatives;
  o.elaborations = !c.no_elaborations;
  return Engine(c.kb.empty() ? KnowledgeBase() : KnowledgeBase::Load(c.kb),
                c.priors.empty() ? RelationPriors() : RelationPriors::Load(c.priors),
                c.profile.empty() ? DetectorProfile::Default() : DetectorProfile::Load(c.profile),
                o);
}

// One question, rendered as ask prints it. Parse errors propagate.
std::string AnswerText(const Engine& engine, const RunConfig& c, const Scene& scene,
                       const std::string& question) {
  QuestionGraph graph = GraphFromQuestion(question, engine.lexicon());
  std::string out;
  if (c.dump_graph) out += Serialize(engine.Plan(graph, scene));
  Answer a = engine.Evaluate(graph, scene);
  if (c.format == "json") return out + AnswerToJson(a) + "\n";
  RenderOptions r;
  r.explain = c.explain;
  r.alternatives = !c.no_alternatives;
  r.elaborations = !c.no_elaborations;
  r.trace = c.trace;
  return out + RenderText(a, r);
}

bool IsFileError(const std::exception& e) {
  return dynamic_cast<const IoError*>(&e) || dynamic_cast<const SceneError*>(&e) ||
         dynamic_cast<const FormatError*>(&e);
}

bool IsQuestionError(const std::exception& e) {
  return dynamic_cast<const ParseError*>(&e) || dynamic_cast<const GraphError*>(&e);
}

int Ask(const RunConfig& c, const std::vector<std::string>& words, std::ostream& out) {
  Engine engine = MakeEngine(c);
  Scene scene = LoadScene(c.scene);
  out << AnswerText(engine, c, scene, Join(words, " "));
  return 0;
}

int Repl(const RunConfig& c, std::istream& in, std::ostream& out) {
  Engine engine = MakeEngine(c);
  Scene scene = LoadScene(c.scene);
  std::string line;
  while (std::getline(in, line)) {
    std::string text(Trim(line));
    if (text.empty() || text[0] == '#') continue;
    if (text == ":quit") break;
    if (text.rfind(":scene", 0) == 0) {
      std::string path(Trim(std::string_view(text).substr(6)));
      try {
        scene = LoadScene(path);
        out << "scene " << path << " (" << scene.objects.size() << " objects)\n";
      } catch (const Error& e) {
        out << "error: " << e.what() << "\n";
      }
      continue;
    }
    out << "? " << text << "\n";
    try {
      out << AnswerText(engine, c, scene, text);
    } catch (const Error& e) {
      out << "error: " << e.what() << "\n";
    }
  }
  return 0;
}

int Batch(const RunConfig& c, const std::string& pairs_path, std::ostream& out,
          std::ostream& err) {
  Engine engine = MakeEngine(c);
  std::string text = ReadFile(pairs_path);
  std::filesystem::path base = std::filesystem::path(pairs_path).parent_path();
  std::map<std::string, Scene> scenes;
  int line_no = 0, answered = 0, with_expected = 0, agreed = 0, failed = 0;
  for (std::string_view raw : SplitLines(text)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || Trim(line).front() == '#') continue;
    std::vector<std::string_view> fields = Split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3 || Trim(fields[0]).empty()) {
      err << "line " << line_no << ": expected scene<TAB>question[<TAB>expected], skipped\n";
      ++failed;
      continue;
    }
    std::filesystem::path scene_path(std::string(Trim(fields[0])));
    if (scene_path.is_relative()) scene_path = base / scene_path;
    try {
      auto it = scenes.find(scene_path.string());
      if (it == scenes.end()) it = scenes.emplace(scene_path.string(), LoadScene(scene_path.string())).first;
      Answer a = engine.Ask(Trim(fields[1]), it->second);
      ++answered;
      out << line_no << "\t" << a.value;
      if (fields.size() == 3) {
        ++with_expected;
        bool same = a.value == Trim(fields[2]);
        agreed += same;
        out << "\t" << (same ? "ok" : "MISMATCH expected: " + std::string(fields[2]));
      }
      out << "\n";
    } catch (const Error& e) {
      err << "line " << line_no << ": " << e.what() << "\n";
      ++failed;
    }
  }
  out << "answered " << answered << ", errors " << failed << "\n";
  if (with_expected > 0) out << "agreement " << agreed << "/" << with_expected << "\n";
  return 0;
}

int Gen(const RunConfig& c, uint64_t seed, const std::string& out_dir, int n_scenes,
        int n_questions, double region_only, std::ostream& out) {
  KnowledgeBase kb = c.kb.empty() ? KnowledgeBase() : KnowledgeBase::Load(c.kb);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
  std::ostringstream pairs;
  SceneConfig config;
  config.region_only = region_only;
  for (int i = 0; i < n_scenes; ++i) {
    Scene scene = GenerateScene(seed * 1000003 + static_cast<uint64_t>(i), config);
    char name[32];
    std::snprintf(name, sizeof(name), "scene_%04d.json", i);
    WriteFile((std::filesystem::path(out_dir) / name).string(), SceneToJson(scene) + "\n");
    for (int j = 0; j < n_questions; ++j) {
      std::string q = GenerateQuestion(seed * 7919 + static_cast<uint64_t>(i) * 1000 +
                                           static_cast<uint64_t>(j),
                                       scene);
      std::string expected = OracleAnswer(GraphFromQuestion(q), scene, kb);
      pairs << name << "\t" << q << "\t" << expected << "\n";
    }
  }
  std::string pairs_path = (std::filesystem::path(out_dir) / "pairs.tsv").string();
  WriteFile(pairs_path, pairs.str());
  out << "wrote " << n_scenes << " scenes and " << n_scenes * n_questions << " pairs to "
      << out_dir << "\n";
  return 0;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Compositional question answering over symbolic scenes", "cqa"};
  app.require_subcommand(1);
  RunConfig config;

  auto* ask = app.add_subcommand("ask", "answer one question");
  AddCommon(ask, &config, true);
  std::vector<std::string> words;
  ask->add_option("question", words, "the question")->required();

  auto* repl = app.add_subcommand("repl", "answer questions read line by line");
  AddCommon(repl, &config, true);

  auto* batch = app.add_subcommand("batch", "answer a file of scene/question pairs");
  AddCommon(batch, &config, false);
  std::string pairs_path;
  batch->add_option("pairs", pairs_path, "scene<TAB>question[<TAB>expected] lines")->required();

  auto* gen = app.add_subcommand("gen", "write random scenes, questions and expected answers");
  uint64_t seed = 1;
  std::string out_dir;
  int n_scenes = 10, n_questions = 10;
  double region_only = 0;
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--out-dir", out_dir, "output directory")->required();
  gen->add_option("--kb", config.kb, "knowledge base TSV used for the expected answers");
  gen->add_option("--scenes", n_scenes, "number of scenes")->check(CLI::PositiveNumber);
  gen->add_option("--questions", n_questions, "questions per scene")->check(CLI::PositiveNumber);
  gen->add_option("--region-only", region_only, "fraction of RegionOnly objects")
      ->check(CLI::Range(0.0, 1.0));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help output exits 0; every other usage problem maps to kExitUsage.
    return app.exit(e, out, err) == 0 ? 0 : kExitUsage;
  }

  try {
    if (ask->parsed()) return Ask(config, words, out);
    if (repl->parsed()) return Repl(config, in, out);
    if (batch->parsed()) return Batch(config, pairs_path, out, err);
    return Gen(config, seed, out_dir, n_scenes, n_questions, region_only, out);
  } catch (const std::exception& e) {
    err << "cqa: " << e.what() << "\n";
    if (IsQuestionError(e)) return kExitParseError;
    if (IsFileError(e)) return kExitFileError;
    return 1;
  }
}

}  // namespace cqa
