#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stallings/endomorphism.hpp"
#include "stallings/fold.hpp"
#include "stallings/io.hpp"
#include "stallings/lengths.hpp"
#include "stallings/stallings_graph.hpp"
#include "stallings/whitehead.hpp"
#include "stallings/word.hpp"

using nlohmann::json;
using namespace stallings;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInputError = 2;

int infer_rank(const std::vector<Word>& ws, int rank_flag) {
  int n = 1;
  for (const Word& w : ws) n = std::max(n, w.rank());
  if (rank_flag > 0) {
    if (rank_flag < n) throw std::invalid_argument("--rank below highest letter used");
    return rank_flag;
  }
  return n;
}

void write_out(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw std::invalid_argument("cannot open output file " + out_path);
  os << text;
}

struct QueryResult {
  int exit_code = kExitTrue;
  std::string output;           // printed to stdout
  json trace;                   // emitted when tracing was requested
  bool has_trace = false;
  std::chrono::duration<double> elapsed{0};
};

QueryResult run_reduce(const std::string& word, int rank_flag) {
  QueryResult qr;
  Word w = rank_flag > 0 ? Word::parse(word, rank_flag) : Word::parse(word);
  qr.output = w.str() + "\n";
  return qr;
}

QueryResult run_conj(const std::string& w1, const std::string& w2, int rank_flag) {
  QueryResult qr;
  Word a = Word::parse(w1), b = Word::parse(w2);
  int n = infer_rank({a, b}, rank_flag);
  a = Word::reduce(a.letters(), n);
  b = Word::reduce(b.letters(), n);
  bool conj = are_conjugate(a, b);
  qr.output = conj ? "conjugate\n" : "not conjugate\n";
  qr.exit_code = conj ? kExitTrue : kExitFalse;
  return qr;
}

void write_iteration_dots(const PartialBasisResult& r, const std::string& dot_dir) {
  if (dot_dir.empty()) return;
  for (const SplitTraceStep& s : r.trace) {
    std::ofstream dot(dot_dir + "/iteration" + std::to_string(s.iteration) + ".dot");
    if (!dot) throw std::invalid_argument("cannot write into " + dot_dir);
    dot << graph_to_dot(s.snapshot);
  }
}

QueryResult run_primitive(const std::string& word, int rank_flag, bool trace,
                          const std::string& dot_dir) {
  QueryResult qr;
  Word w = Word::parse(word);
  int n = infer_rank({w}, rank_flag);
  PartialBasisResult r = is_partial_free_basis({w}, n);
  qr.output = r.verdict ? "primitive\n" : "not primitive\n";
  qr.exit_code = r.verdict ? kExitTrue : kExitFalse;
  if (trace) {
    qr.trace = whitehead_trace_json(r);
    qr.has_trace = true;
  }
  write_iteration_dots(r, dot_dir);
  return qr;
}

QueryResult run_partial_basis(const std::vector<std::string>& words, int rank_flag, bool trace,
                              const std::string& dot_dir) {
  QueryResult qr;
  std::vector<Word> ws;
  for (const auto& s : words) ws.push_back(Word::parse(s));
  int n = infer_rank(ws, rank_flag);
  PartialBasisResult r = is_partial_free_basis(ws, n);
  qr.output = r.verdict ? "partial free basis\n" : "not a partial free basis\n";
  qr.exit_code = r.verdict ? kExitTrue : kExitFalse;
  if (trace) {
    qr.trace = whitehead_trace_json(r);
    qr.has_trace = true;
  }
  write_iteration_dots(r, dot_dir);
  return qr;
}

QueryResult run_endo(const std::string& images, int rank_flag, bool check) {
  QueryResult qr;
  Endomorphism e = rank_flag > 0 ? Endomorphism::parse(images, rank_flag)
                                 : Endomorphism::parse(images);
  EndomorphismClassification c = classify_endomorphism(e);
  std::ostringstream os;
  os << "injective=" << (c.injective ? "true" : "false")
     << " surjective=" << (c.surjective ? "true" : "false")
     << " automorphism=" << (c.automorphism ? "true" : "false") << "\n";
  if (check) {
    long long det = abelianization_determinant(e);
    bool det_ok = !c.automorphism || (det == 1 || det == -1);
    bool cohopf_ok = !c.surjective || c.injective;  // F_n is co-Hopfian
    os << "check abelian_det=" << det << " consistent=" << (det_ok && cohopf_ok ? "ok" : "FAIL")
       << "\n";
  }
  qr.output = os.str();
  qr.exit_code = c.automorphism ? kExitTrue : kExitFalse;
  return qr;
}

QueryResult run_fold(const std::string& images, int rank_flag, bool trace,
                     const std::string& dot_dir) {
  QueryResult qr;
  Endomorphism e = rank_flag > 0 ? Endomorphism::parse(images, rank_flag)
                                 : Endomorphism::parse(images);
  auto made = make_foldable(from_endomorphism(e));
  if (std::holds_alternative<PiOneTrivial>(made)) {
    qr.output = "pi1-trivial\n";
    qr.exit_code = kExitFalse;
    return qr;
  }
  const auto& fr = std::get<FoldableResult>(made);
  FoldFactorization fac = fold_factorize(fr.foldable);
  std::ostringstream os;
  os << "folds=" << fac.fold_count();
  TerminalClassification tc = classify_terminal(fac.terminal);
  os << " terminal=";
  switch (tc.kind) {
    case TerminalClass::Homeomorphism: os << "homeomorphism"; break;
    case TerminalClass::Covering: os << "covering(" << tc.degree << ")"; break;
    case TerminalClass::NotCoveringInfiniteIndex: os << "not-covering"; break;
  }
  os << "\n";
  qr.output = os.str();
  if (trace) {
    qr.trace = fold_trace_json(fac);
    qr.has_trace = true;
  }
  if (!dot_dir.empty()) {
    for (std::size_t i = 0; i < fac.graphs.size(); ++i) {
      std::ofstream dot(dot_dir + "/step" + std::to_string(i) + ".dot");
      if (!dot) throw std::invalid_argument("cannot write into " + dot_dir);
      dot << graph_to_dot(fac.graphs[i]);
    }
  }
  return qr;
}

QueryResult run_subgroup(const std::vector<std::string>& words, int rank_flag, bool basis,
                         bool index_flag, const std::string& contains_word,
                         const std::string& dot_file, const std::string& json_file) {
  QueryResult qr;
  std::vector<Word> ws;
  for (const auto& s : words) ws.push_back(Word::parse(s));
  int n = infer_rank(ws, rank_flag);
  StallingsGraph s = StallingsGraph::build(ws, n);
  std::ostringstream os;
  os << "rank=" << s.subgroup_rank();
  if (index_flag) {
    auto idx = s.index();
    if (auto* d = std::get_if<int>(&idx))
      os << " index=" << *d;
    else
      os << " index=infinite";
  }
  os << "\n";
  if (basis) {
    os << "basis:";
    for (const Word& b : s.subgroup_basis()) os << " " << b.str();
    os << "\n";
  }
  if (!contains_word.empty()) {
    Word w = Word::parse(contains_word, n);
    bool in = s.contains(w);
    os << "contains " << w.str() << ": " << (in ? "yes" : "no") << "\n";
    qr.exit_code = in ? kExitTrue : kExitFalse;
  }
  if (!dot_file.empty()) {
    std::ofstream dot(dot_file);
    if (!dot) throw std::invalid_argument("cannot open " + dot_file);
    dot << stallings_to_dot(s);
  }
  if (!json_file.empty()) {
    std::ofstream jf(json_file);
    if (!jf) throw std::invalid_argument("cannot open " + json_file);
    jf << stallings_to_json(s).dump(2) << "\n";
  }
  qr.output = os.str();
  return qr;
}

QueryResult run_systole(const std::string& graph_file, const std::string& lengths_arg) {
  QueryResult qr;
  std::ifstream in(graph_file);
  if (!in) throw std::invalid_argument("cannot open graph file " + graph_file);
  json j;
  in >> j;
  LoadedGraph lg = graph_from_json(j);
  std::vector<Rational> lens;
  if (lengths_arg.empty()) {
    int m = lg.graph.edge_pair_count();
    lens.assign(static_cast<std::size_t>(m), Rational(1, m));
  } else {
    lens.assign(static_cast<std::size_t>(lg.graph.edge_pair_count()), Rational(0));
    std::stringstream ss(lengths_arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos || item.empty() || item[0] != 'e')
        throw std::invalid_argument("expected --lengths e<id>=<rational>,...");
      long long id = std::stoll(item.substr(1, eq - 1));
      int k = -1;
      for (std::size_t i = 0; i < lg.edge_ids.size(); ++i)
        if (lg.edge_ids[i] == id) k = static_cast<int>(i);
      if (k == -1) throw std::invalid_argument("unknown edge id in --lengths");
      lens[static_cast<std::size_t>(k)] = parse_rational(item.substr(eq + 1));
    }
  }
  LengthStructure l(lg.graph, std::move(lens));  // rejects non-normalized input
  Systole sys = systole(l);
  std::ostringstream os;
  os << "systole=" << rational_str(sys.value) << " witness=";
  for (std::size_t i = 0; i < sys.witness.edges.size(); ++i) {
    int e = sys.witness.edges[i];
    if (i) os << ".";
    os << "e" << lg.edge_ids[static_cast<std::size_t>(Graph::pair_of(e))]
       << ((e & 1) ? "'" : "");
  }
  os << "\n";
  qr.output = os.str();
  return qr;
}

int run_query_line(const std::string& line, std::ostream& out);

QueryResult run_batch(const std::string& file) {
  QueryResult qr;
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot open batch file " + file);
  std::ostringstream os;
  std::string line;
  int idx = 0;
  bool all_ok = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    os << idx++ << " ";
    int code = run_query_line(line, os);
    all_ok = all_ok && code != kExitInputError;
  }
  qr.output = os.str();
  qr.exit_code = all_ok ? kExitTrue : kExitInputError;
  return qr;
}

// One whitespace-separated query per line: reduce W | conj W1 W2 |
// primitive W RANK | partial-basis RANK W1 [W2 ...] | endo IMAGES
int run_query_line(const std::string& line, std::ostream& out) {
  std::istringstream ss(line);
  std::vector<std::string> tok;
  std::string t;
  while (ss >> t) tok.push_back(t);
  try {
    if (tok.empty()) throw std::invalid_argument("empty query");
    if (tok[0] == "reduce" && tok.size() == 2) {
      out << Word::parse(tok[1]).str() << "\n";
      return kExitTrue;
    }
    if (tok[0] == "conj" && tok.size() == 3) {
      QueryResult r = run_conj(tok[1], tok[2], 0);
      out << (r.exit_code == kExitTrue ? "true" : "false") << "\n";
      return r.exit_code;
    }
    if (tok[0] == "primitive" && tok.size() == 3) {
      QueryResult r = run_primitive(tok[1], std::stoi(tok[2]), false, "");
      out << (r.exit_code == kExitTrue ? "true" : "false") << "\n";
      return r.exit_code;
    }
    if (tok[0] == "partial-basis" && tok.size() >= 3) {
      std::vector<std::string> ws(tok.begin() + 2, tok.end());
      QueryResult r = run_partial_basis(ws, std::stoi(tok[1]), false, "");
      out << (r.exit_code == kExitTrue ? "true" : "false") << "\n";
      return r.exit_code;
    }
    if (tok[0] == "endo" && tok.size() == 2) {
      QueryResult r = run_endo(tok[1], 0, false);
      out << (r.exit_code == kExitTrue ? "automorphism" : "not-automorphism") << "\n";
      return r.exit_code;
    }
    throw std::invalid_argument("unrecognized query: " + line);
  } catch (const std::exception& ex) {
    out << "error: " << ex.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedures for free groups: words, folds, subgroups, Whitehead's algorithm"};
  app.require_subcommand(0, 1);
  std::string batch_flag_file;
  app.add_option("--batch", batch_flag_file, "evaluate a file of queries, one per line");

  std::string word, word2, images, out_path, dot_file, json_file, dot_dir, graph_file;
  std::string lengths_arg, contains_word, batch_file;
  std::vector<std::string> words;
  int rank_flag = 0;
  bool trace = false, basis = false, index_flag = false, check = false;

  auto add_rank = [&](CLI::App* cmd) { cmd->add_option("--rank", rank_flag, "ambient rank (default: highest letter used)"); };
  auto add_trace = [&](CLI::App* cmd) {
    cmd->add_flag("--trace", trace, "emit a JSON trace");
    cmd->add_option("--out", out_path, "write the trace to a file instead of stdout");
  };

  auto* c_reduce = app.add_subcommand("reduce", "reduce a word");
  c_reduce->add_option("word", word)->required();
  add_rank(c_reduce);

  auto* c_conj = app.add_subcommand("conj", "decide conjugacy of two words");
  c_conj->add_option("word1", word)->required();
  c_conj->add_option("word2", word2)->required();
  add_rank(c_conj);

  auto* c_prim = app.add_subcommand("primitive", "decide whether a word is a free basis element (up to conjugacy)");
  c_prim->add_option("word", word)->required();
  c_prim->add_option("--dot-dir", dot_dir, "write one DOT file per split iteration");
  add_rank(c_prim);
  add_trace(c_prim);

  auto* c_pb = app.add_subcommand("partial-basis", "decide whether conjugacy classes embed in a free basis");
  c_pb->add_option("--conjugacy", words, "class representatives")->required();
  c_pb->add_option("--dot-dir", dot_dir, "write one DOT file per split iteration");
  add_rank(c_pb);
  add_trace(c_pb);

  auto* c_endo = app.add_subcommand("endo", "classify an endomorphism");
  c_endo->add_option("--images", images, "comma-separated generator images")->required();
  c_endo->add_flag("--check", check, "cross-check against abelianization");
  add_rank(c_endo);

  auto* c_fold = app.add_subcommand("fold", "maximal fold factorization of an endomorphism");
  c_fold->add_option("--images", images)->required();
  c_fold->add_option("--dot-dir", dot_dir, "write one DOT file per fold step");
  add_rank(c_fold);
  add_trace(c_fold);

  auto* c_sub = app.add_subcommand("subgroup", "Stallings graph of a finitely generated subgroup");
  c_sub->add_option("words", words)->required();
  c_sub->add_flag("--basis", basis, "print a free basis");
  c_sub->add_flag("--index", index_flag, "print the index");
  c_sub->add_option("--contains", contains_word, "membership test");
  c_sub->add_option("--dot", dot_file, "write DOT");
  c_sub->add_option("--json", json_file, "write labeled graph JSON");
  add_rank(c_sub);

  auto* c_sys = app.add_subcommand("systole", "systole of a length structure");
  c_sys->add_option("--graph", graph_file, "graph JSON file")->required();
  c_sys->add_option("--lengths", lengths_arg, "e<id>=<rational>,... (default: barycenter)");

  auto* c_batch = app.add_subcommand("batch", "evaluate a file of queries, one per line");
  c_batch->add_option("file", batch_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    auto start = std::chrono::steady_clock::now();
    QueryResult qr;
    if (app.get_subcommands().empty()) {
      if (batch_flag_file.empty()) {
        std::cerr << app.help();
        return kExitInputError;
      }
      qr = run_batch(batch_flag_file);
    } else if (c_reduce->parsed()) qr = run_reduce(word, rank_flag);
    else if (c_conj->parsed()) qr = run_conj(word, word2, rank_flag);
    else if (c_prim->parsed()) qr = run_primitive(word, rank_flag, trace, dot_dir);
    else if (c_pb->parsed()) qr = run_partial_basis(words, rank_flag, trace, dot_dir);
    else if (c_endo->parsed()) qr = run_endo(images, rank_flag, check);
    else if (c_fold->parsed()) qr = run_fold(images, rank_flag, trace, dot_dir);
    else if (c_sub->parsed()) qr = run_subgroup(words, rank_flag, basis, index_flag, contains_word, dot_file, json_file);
    else if (c_sys->parsed()) qr = run_systole(graph_file, lengths_arg);
    else if (c_batch->parsed()) qr = run_batch(batch_file);
    qr.elapsed = std::chrono::steady_clock::now() - start;
    std::cout << qr.output;
    if (qr.has_trace) write_out(qr.trace.dump(2) + "\n", out_path);
    return qr.exit_code;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInputError;
  }
}
