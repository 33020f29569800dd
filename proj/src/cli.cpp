#include "reflecto/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "reflecto/errors.hpp"

namespace reflecto::cli {

namespace {

// Runs a command body, mapping library exceptions onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const InternalInconsistency& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

Json subset_json(const std::optional<IndexList>& s) {
  if (!s) return nullptr;
  Json out = Json::array();
  for (std::size_t i : *s) out.push_back(i + 1);
  return out;
}

std::string subset_text(const IndexList& s) {
  std::string out = "{";
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (t) out += ',';
    out += std::to_string(s[t] + 1);
  }
  return out + "}";
}

std::string vector_text(const RatVector& v) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += v[k].to_string();
  }
  return out + ")";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void print_assignment(std::ostream& out, const Assignment& a) {
  std::size_t width = 0;
  for (const auto& [var, value] : a) width = std::max(width, var.key().size());
  for (const auto& [var, value] : a) {
    out << "  " << var.key() << std::string(width - var.key().size(), ' ')
        << " = " << value << "\n";
  }
}

void print_decision(std::ostream& out, const TightMatrixDecision& d) {
  if (const auto* p = std::get_if<TightProven>(&d)) {
    out << "tight matrix: proven (" << to_string(p->method) << ")\n";
  } else if (const auto* n = std::get_if<NotTight>(&d)) {
    out << "tight matrix: NO, system not tight at b = " << vector_text(n->b) << "\n";
    out << "witness:\n";
    print_assignment(out, n->witness);
  } else {
    const auto& u = std::get<UnknownSampled>(d);
    out << "tight matrix: unknown; tight system for all " << u.tested_b.size()
        << " tested b vectors\n";
  }
}

void print_verdict(std::ostream& out, const TightnessVerdict& v, const RatVector& b) {
  out << "tight system at b = " << vector_text(b) << ": " << yes_no(v.tight) << "\n";
  out << "  LP status " << to_string(v.lp_status) << ", variable sum " << v.optimum
      << " of " << v.variable_count << "\n";
  if (v.witness) {
    out << "witness:\n";
    print_assignment(out, *v.witness);
  }
}

void print_class_report(std::ostream& out, const RatMatrix& m, const ClassOptions& opts) {
  const ClassReport rep = classify(m, opts);
  out << "completely-S:       " << yes_no(rep.is_completely_s);
  if (rep.completely_s_failing_subset) {
    out << "  (fails on " << subset_text(*rep.completely_s_failing_subset) << ")";
  }
  out << "\nP-matrix:           " << yes_no(rep.is_p);
  if (rep.p_failing_subset) out << "  (minor " << subset_text(*rep.p_failing_subset) << " <= 0)";
  out << "\nM-matrix:           " << yes_no(rep.is_m) << "\n";
  out << "positive definite:  " << yes_no(rep.is_positive_definite) << "\n";
  if (m.rows() == 2) out << "2x2 sign case:      " << to_string(thm1_classify(m)) << "\n";
  out << "Hessenberg pattern: " << yes_no(thm2_applicable(m, opts)) << "\n";
}

RatVector ones(std::size_t d) { return RatVector(d, Rational(1)); }

RatVector parse_b(const std::string& csv) {
  RatVector b = parse_rational_list(csv);
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (!b[k].is_positive()) {
      throw InvalidInput("--b entry " + std::to_string(k + 1) + " is not positive");
    }
  }
  return b;
}

std::vector<std::size_t> parse_route(const std::string& csv) {
  std::vector<std::size_t> route;
  for (const Rational& r : parse_rational_list(csv)) {
    if (!r.is_integer() || !r.is_positive()) {
      throw InvalidInput("route entries must be positive station numbers");
    }
    route.push_back(r.numerator().get_ui());
  }
  return route;
}

}  // namespace

std::string format_matrix(const RatMatrix& m, const std::vector<std::string>& labels) {
  const bool labelled = labels.size() == m.rows() && m.rows() == m.cols();
  std::vector<std::size_t> width(m.cols(), 0);
  std::size_t label_width = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (labelled) width[j] = labels[j].size();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      width[j] = std::max(width[j], m(i, j).to_string().size());
    }
  }
  if (labelled) {
    for (const auto& l : labels) label_width = std::max(label_width, l.size());
  }
  std::ostringstream os;
  if (labelled) {
    os << "  " << std::string(label_width, ' ');
    for (std::size_t j = 0; j < m.cols(); ++j) {
      os << "  " << std::string(width[j] - labels[j].size(), ' ') << labels[j];
    }
    os << "\n";
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "  ";
    if (labelled) os << labels[i] << std::string(label_width - labels[i].size(), ' ');
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const std::string s = m(i, j).to_string();
      os << "  " << std::string(width[j] - s.size(), ' ') << s;
    }
    os << "\n";
  }
  return os.str();
}

Json class_report_json(const RatMatrix& m, const ClassOptions& opts) {
  const ClassReport rep = classify(m, opts);
  Json out;
  out["completely_s"] = rep.is_completely_s;
  out["completely_s_failing_subset"] = subset_json(rep.completely_s_failing_subset);
  out["p_matrix"] = rep.is_p;
  out["p_failing_subset"] = subset_json(rep.p_failing_subset);
  out["m_matrix"] = rep.is_m;
  out["positive_definite"] = rep.is_positive_definite;
  out["thm1_case"] = m.rows() == 2 ? Json(to_string(thm1_classify(m))) : Json(nullptr);
  out["thm2_applicable"] = thm2_applicable(m, opts);
  return out;
}

Json verdict_json(const TightnessVerdict& v, const RatVector& b, bool aux_bounded) {
  Json out;
  out["b"] = to_json(b);
  out["aux_bounded"] = aux_bounded;
  out["tight"] = v.tight;
  out["lp_status"] = to_string(v.lp_status);
  out["optimum"] = to_json(v.optimum);
  out["variable_count"] = v.variable_count;
  out["witness"] = v.witness ? witness_to_json(*v.witness) : Json(nullptr);
  return out;
}

Json decision_json(const TightMatrixDecision& d) {
  Json out;
  if (const auto* p = std::get_if<TightProven>(&d)) {
    out["status"] = "TightProven";
    out["method"] = to_string(p->method);
  } else if (const auto* n = std::get_if<NotTight>(&d)) {
    out["status"] = "NotTight";
    out["b"] = to_json(n->b);
    out["witness"] = witness_to_json(n->witness);
  } else {
    const auto& u = std::get<UnknownSampled>(d);
    out["status"] = "UnknownSampled";
    Json tested = Json::array();
    for (const auto& b : u.tested_b) tested.push_back(to_json(b));
    out["tested_b"] = tested;
    out["all_tight"] = true;
  }
  return out;
}

Json verification_json(const VerificationReport& r) {
  Json out;
  out["passed"] = r.all_passed();
  out["is_all_ones"] = r.is_all_ones;
  const auto failure = r.first_failure();
  out["first_failure"] = failure ? Json(*failure) : Json(nullptr);
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"id", c.id}, {"passed", c.passed}});
  out["checks"] = checks;
  return out;
}

// --- analyze -----------------------------------------------------------------

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const NetworkSpec spec = spec_from_json(read_json_file(opts.spec_path));
    const ValidationReport validation = validate_spec(spec);
    if (!validation.ok()) {
      for (const auto& issue : validation.issues) {
        err << "invalid spec: " << issue.location << ": " << issue.message << "\n";
      }
      return kExitBadInput;
    }
    const ClassOptions class_opts = class_options_from_env();
    const DerivedMatrices dm = derive(spec);
    const TrafficReport tr = traffic(spec);
    const bool aux_bounded = !opts.unbounded_aux;
    std::optional<RatVector> b;
    if (opts.b_csv) b = parse_b(*opts.b_csv);
    if (b && dm.r && b->size() != dm.r->rows()) {
      throw InvalidInput("--b needs " + std::to_string(dm.r->rows()) + " entries");
    }

    std::vector<std::string> labels;
    Json relabel = Json::array();
    for (std::size_t s : dm.original_station) {
      labels.push_back("s" + std::to_string(s + 1));
      relabel.push_back(s + 1);
    }

    Json tightness;
    std::optional<TightMatrixDecision> decision;
    std::string not_cs_reason;
    std::optional<TightnessVerdict> verdict;
    if (dm.r) {
      DecideOptions dopts;
      dopts.samples = opts.samples;
      dopts.seed = opts.seed;
      dopts.aux_bounded = aux_bounded;
      dopts.classes = class_opts;
      try {
        decision = decide_tight_matrix(*dm.r, dopts);
        tightness = decision_json(*decision);
      } catch (const NotCompletelyS& e) {
        not_cs_reason = e.what();
        tightness = {{"status", "NotCompletelyS"}, {"reason", not_cs_reason}};
      }
      if (b) verdict = check_tight_system(*dm.r, *b, aux_bounded, class_opts);
    } else {
      tightness = {{"status", "Undefined"}, {"reason", "Q singular"}};
    }

    if (opts.json) {
      Json report;
      report["input"] = spec_to_json(spec);
      report["relabel"] = relabel;
      Json lowest = Json::array();
      for (std::size_t k : dm.sets.lowest) lowest.push_back(k + 1);
      report["lowest_priority_class"] = lowest;
      Json mats;
      mats["W"] = to_json(dm.w);
      mats["B"] = to_json(dm.b);
      mats["F"] = to_json(dm.f);
      mats["A"] = to_json(dm.a);
      mats["A_inv"] = to_json(dm.a_inv);
      mats["Q"] = to_json(dm.q);
      mats["R"] = dm.r ? to_json(*dm.r) : Json("undefined: Q singular");
      report["matrices"] = mats;
      report["traffic"] = {{"alpha", to_json(tr.alpha)},
                           {"rho", to_json(tr.rho)},
                           {"heavy_traffic", tr.heavy_traffic}};
      report["classification"] = dm.r ? class_report_json(*dm.r, class_opts) : Json(nullptr);
      report["tightness"] = tightness;
      report["tight_system"] = verdict ? verdict_json(*verdict, *b, aux_bounded) : Json(nullptr);
      out << report.dump(2) << "\n";
      return kExitOk;
    }

    out << "network: " << spec.classes << " classes, " << spec.stations << " stations\n";
    out << "station order (relabeled <- original):";
    for (std::size_t i = 0; i < dm.original_station.size(); ++i) {
      out << " " << i + 1 << "<-" << dm.original_station[i] + 1;
    }
    out << "\nlowest-priority class per station:";
    for (std::size_t i = 0; i < dm.sets.lowest.size(); ++i) {
      out << " " << labels[i] << ":" << dm.sets.lowest[i] + 1;
    }
    out << "\n\nW =\n" << format_matrix(dm.w) << "B =\n" << format_matrix(dm.b)
        << "F =\n" << format_matrix(dm.f) << "A =\n" << format_matrix(dm.a)
        << "A^-1 =\n" << format_matrix(dm.a_inv) << "Q =\n" << format_matrix(dm.q, labels);
    if (dm.r) {
      out << "R =\n" << format_matrix(*dm.r, labels);
    } else {
      out << "R: undefined (Q singular)\n";
    }
    out << "\nalpha = " << vector_text(tr.alpha) << "\nrho   = " << vector_text(tr.rho)
        << " (original station order)\nheavy traffic: " << yes_no(tr.heavy_traffic) << "\n";
    if (dm.r) {
      out << "\n";
      print_class_report(out, *dm.r, class_opts);
      out << "\n";
      if (decision) {
        print_decision(out, *decision);
      } else {
        out << "tight matrix: not applicable (" << not_cs_reason << ")\n";
      }
      if (verdict) print_verdict(out, *verdict, *b);
    }
    return kExitOk;
  });
}

// --- classify ------------------------------------------------------------------

int cmd_classify(const ClassifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const MatrixFile mf = matrix_file_from_json(read_json_file(opts.matrix_path));
    const ClassOptions class_opts = class_options_from_env();
    if (opts.json) {
      out << class_report_json(mf.matrix, class_opts).dump(2) << "\n";
    } else {
      print_class_report(out, mf.matrix, class_opts);
    }
    return kExitOk;
  });
}

// --- tight ---------------------------------------------------------------------

int cmd_tight(const TightOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const MatrixFile mf = matrix_file_from_json(read_json_file(opts.matrix_path));
    const ClassOptions class_opts = class_options_from_env();
    const bool aux_bounded = !opts.unbounded_aux;
    std::optional<RatVector> b = mf.b;
    if (opts.b_csv) b = parse_b(*opts.b_csv);
    if (b) {
      if (b->size() != mf.matrix.rows()) {
        throw InvalidInput("b needs " + std::to_string(mf.matrix.rows()) + " entries");
      }
      const TightnessVerdict v = check_tight_system(mf.matrix, *b, aux_bounded, class_opts);
      if (opts.json) {
        out << verdict_json(v, *b, aux_bounded).dump(2) << "\n";
      } else {
        print_verdict(out, v, *b);
      }
      return kExitOk;
    }
    DecideOptions dopts;
    dopts.samples = opts.samples;
    dopts.seed = opts.seed;
    dopts.aux_bounded = aux_bounded;
    dopts.classes = class_opts;
    const TightMatrixDecision d = decide_tight_matrix(mf.matrix, dopts);
    if (opts.json) {
      out << decision_json(d).dump(2) << "\n";
    } else {
      print_decision(out, d);
    }
    return kExitOk;
  });
}

// --- reentrant -------------------------------------------------------------------

int cmd_reentrant(const ReentrantOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Discipline discipline;
    if (opts.discipline == "fbfs") {
      discipline = Discipline::kFBFS;
    } else if (opts.discipline == "lbfs") {
      discipline = Discipline::kLBFS;
    } else {
      throw InvalidInput("discipline must be fbfs or lbfs");
    }
    const NetworkSpec spec = reentrant_spec(parse_route(opts.route_csv),
                                            parse_rational_list(opts.means_csv),
                                            rat_parse(opts.arrival), discipline);
    require_valid(spec);
    const std::string text = spec_to_json(spec).dump(2) + "\n";
    if (opts.output) {
      std::ofstream file(*opts.output);
      if (!file) throw InvalidInput("cannot write " + opts.output->string());
      file << text;
    } else {
      out << text;
    }
    return kExitOk;
  });
}

// --- witness ---------------------------------------------------------------------

int cmd_witness(const WitnessOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const MatrixFile mf = matrix_file_from_json(read_json_file(opts.matrix_path));
    const Assignment a = witness_from_json(read_json_file(opts.witness_path));
    RatVector b = mf.b.value_or(ones(mf.matrix.rows()));
    if (opts.b_csv) b = parse_b(*opts.b_csv);
    const TightnessSystem sys =
        build_system(mf.matrix, b, !opts.unbounded_aux, class_options_from_env());
    const VerificationReport rep = verify_assignment(sys, a);
    const bool valid = rep.all_passed() && !rep.is_all_ones;
    if (opts.json) {
      out << verification_json(rep).dump(2) << "\n";
    } else {
      std::size_t failed = 0;
      for (const auto& c : rep.checks) {
        if (!c.passed) {
          out << "FAIL " << c.id << "\n";
          ++failed;
        }
      }
      out << rep.checks.size() - failed << "/" << rep.checks.size() << " constraints hold";
      if (rep.is_all_ones) out << "; assignment is the all-ones solution";
      out << "\n" << (valid ? "valid non-trivial witness" : "not a valid non-trivial witness")
          << "\n";
    }
    if (!rep.all_passed()) err << "first failing constraint: " << *rep.first_failure() << "\n";
    return valid ? kExitOk : kExitBadInput;
  });
}

}  // namespace reflecto::cli
