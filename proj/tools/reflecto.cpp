// reflecto: reflection matrices of static-priority queueing networks,
// matrix-class certificates and exact tightness checks.

#include <iostream>

#include "CLI11.hpp"
#include "reflecto/cli.hpp"

int main(int argc, char** argv) {
  using namespace reflecto::cli;

  CLI::App app{"Reflection matrices, matrix classes and tightness certificates"};
  app.require_subcommand(1);

  AnalyzeOptions analyze;
  auto* a = app.add_subcommand("analyze", "derive W, B, F, A, Q, R for a network and decide tightness");
  a->add_option("spec", analyze.spec_path, "network spec JSON")->required();
  a->add_flag("--json", analyze.json, "emit a single JSON document");
  a->add_option("--b", analyze.b_csv, "also check the tight system at this b (csv of rationals)");
  a->add_option("--samples", analyze.samples, "random b vectors for the sampled oracle")
      ->capture_default_str();
  a->add_option("--seed", analyze.seed, "seed for sampled b vectors")->capture_default_str();
  a->add_flag("--unbounded-aux", analyze.unbounded_aux,
              "do not impose [0,1] on boundary variables");

  ClassifyOptions classify;
  auto* c = app.add_subcommand("classify", "completely-S / P / M / positive-definite tests");
  c->add_option("matrix", classify.matrix_path, "matrix JSON")->required();
  c->add_flag("--json", classify.json, "emit JSON");

  TightOptions tight;
  auto* t = app.add_subcommand("tight", "tight-system check at b, or tight-matrix decision");
  t->add_option("matrix", tight.matrix_path, "matrix JSON")->required();
  t->add_option("--b", tight.b_csv, "check only this b (csv of rationals)");
  t->add_option("--samples", tight.samples, "random b vectors")->capture_default_str();
  t->add_option("--seed", tight.seed, "seed for sampled b vectors")->capture_default_str();
  t->add_flag("--unbounded-aux", tight.unbounded_aux, "do not impose [0,1] on boundary variables");
  t->add_flag("--json", tight.json, "emit JSON");

  ReentrantOptions reentrant;
  auto* r = app.add_subcommand("reentrant", "write the spec of a single-route network");
  r->add_option("--route", reentrant.route_csv, "station visited by each class, e.g. 1,1,2,3")
      ->required();
  r->add_option("--means", reentrant.means_csv, "mean service time per class")->required();
  r->add_option("--arrival", reentrant.arrival, "external arrival rate of class 1")
      ->capture_default_str();
  r->add_option("--discipline", reentrant.discipline, "fbfs or lbfs")
      ->check(CLI::IsMember({"fbfs", "lbfs"}))
      ->capture_default_str();
  r->add_option("-o,--output", reentrant.output, "output path (default stdout)");

  WitnessOptions witness;
  auto* w = app.add_subcommand("witness", "verify a witness assignment");
  w->add_option("matrix", witness.matrix_path, "matrix JSON")->required();
  w->add_option("witness", witness.witness_path, "witness JSON")->required();
  w->add_option("--b", witness.b_csv, "b vector (csv); default from the matrix file or ones");
  w->add_flag("--unbounded-aux", witness.unbounded_aux, "do not impose [0,1] on boundary variables");
  w->add_flag("--json", witness.json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  if (*a) return cmd_analyze(analyze, std::cout, std::cerr);
  if (*c) return cmd_classify(classify, std::cout, std::cerr);
  if (*t) return cmd_tight(tight, std::cout, std::cerr);
  if (*r) return cmd_reentrant(reentrant, std::cout, std::cerr);
  return cmd_witness(witness, std::cout, std::cerr);
}
