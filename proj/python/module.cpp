#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stallings/endomorphism.hpp"
#include "stallings/fold.hpp"
#include "stallings/io.hpp"
#include "stallings/lengths.hpp"
#include "stallings/stallings_graph.hpp"
#include "stallings/whitehead.hpp"
#include "stallings/word.hpp"

namespace py = pybind11;
using namespace stallings;

namespace {

Word parse_at(const std::string& s, int rank) {
  return rank > 0 ? Word::parse(s, rank) : Word::parse(s);
}

std::vector<Word> parse_all(const std::vector<std::string>& ws, int rank) {
  std::vector<Word> out;
  int n = rank;
  if (n <= 0) {
    n = 1;
    for (const auto& s : ws) n = std::max(n, Word::parse(s).rank());
  }
  for (const auto& s : ws) out.push_back(Word::parse(s, n));
  return out;
}

}  // namespace

PYBIND11_MODULE(_stallings, m) {
  m.doc() = "Free group decision procedures: reduced words, Stallings folds, "
            "subgroup graphs, Whitehead's algorithm";

  m.def("reduce", [](const std::string& w, int rank) { return parse_at(w, rank).str(); },
        py::arg("word"), py::arg("rank") = 0);
  m.def("multiply", [](const std::string& u, const std::string& v, int rank) {
          auto ws = parse_all({u, v}, rank);
          return multiply(ws[0], ws[1]).str();
        },
        py::arg("u"), py::arg("v"), py::arg("rank") = 0);
  m.def("invert", [](const std::string& w, int rank) { return invert(parse_at(w, rank)).str(); },
        py::arg("word"), py::arg("rank") = 0);
  m.def("are_conjugate", [](const std::string& u, const std::string& v, int rank) {
          auto ws = parse_all({u, v}, rank);
          return are_conjugate(ws[0], ws[1]);
        },
        py::arg("u"), py::arg("v"), py::arg("rank") = 0);
  m.def("cyclic_reduce", [](const std::string& w, int rank) {
          auto cr = cyclic_reduce(parse_at(w, rank));
          return std::pair<std::string, std::string>(cr.conjugator.str(),
                                                     cr.core ? cr.core->str() : "");
        },
        py::arg("word"), py::arg("rank") = 0);
  m.def("extract_root", [](const std::string& w, int rank) {
          auto cr = cyclic_reduce(parse_at(w, rank));
          if (!cr.core) throw std::invalid_argument("identity word has no root");
          Root r = extract_root(*cr.core);
          return std::pair<std::string, int>(r.root.str(), r.power);
        },
        py::arg("word"), py::arg("rank") = 0);
  m.def("abelianize", [](const std::string& w, int rank) { return abelianize(parse_at(w, rank)).coords; },
        py::arg("word"), py::arg("rank") = 0);
  m.def("abelian_basis_element", [](const std::vector<long long>& v) {
          return abelian_basis_element(AbelianVector{v});
        });
  m.def("abelian_partial_basis", [](const std::vector<std::vector<long long>>& vs) {
          std::vector<AbelianVector> avs;
          for (const auto& v : vs) avs.push_back(AbelianVector{v});
          return abelian_partial_basis(avs);
        });

  m.def("apply_endomorphism", [](const std::string& images, const std::string& w, int rank) {
          Endomorphism e = rank > 0 ? Endomorphism::parse(images, rank) : Endomorphism::parse(images);
          return apply_endomorphism(e, Word::parse(w, e.rank())).str();
        },
        py::arg("images"), py::arg("word"), py::arg("rank") = 0);
  m.def("compose", [](const std::string& images1, const std::string& images2, int rank) {
          Endomorphism e1 = rank > 0 ? Endomorphism::parse(images1, rank) : Endomorphism::parse(images1);
          Endomorphism e2 = Endomorphism::parse(images2, e1.rank());
          Endomorphism c = compose(e1, e2);
          std::string out;
          for (int i = 1; i <= c.rank(); ++i) {
            if (i > 1) out += ",";
            out += c.image(i).str();
          }
          return out;
        },
        py::arg("images1"), py::arg("images2"), py::arg("rank") = 0);
  m.def("classify_endomorphism", [](const std::string& images, int rank) {
          Endomorphism e = rank > 0 ? Endomorphism::parse(images, rank) : Endomorphism::parse(images);
          EndomorphismClassification c = classify_endomorphism(e);
          py::dict d;
          d["injective"] = c.injective;
          d["surjective"] = c.surjective;
          d["automorphism"] = c.automorphism;
          d["pi1_trivial"] = c.pi1_trivial;
          return d;
        },
        py::arg("images"), py::arg("rank") = 0);
  m.def("fold_trace", [](const std::string& images, int rank) {
          Endomorphism e = rank > 0 ? Endomorphism::parse(images, rank) : Endomorphism::parse(images);
          auto made = make_foldable(from_endomorphism(e));
          if (std::holds_alternative<PiOneTrivial>(made)) return std::string("[]");
          FoldFactorization fac = fold_factorize(std::get<FoldableResult>(made).foldable);
          return fold_trace_json(fac).dump();
        },
        py::arg("images"), py::arg("rank") = 0);

  m.def("is_primitive", [](const std::string& w, int rank) {
          Word word = Word::parse(w);
          int n = rank > 0 ? rank : word.rank();
          return is_partial_free_basis({word}, n).verdict;
        },
        py::arg("word"), py::arg("rank") = 0);
  m.def("is_partial_free_basis", [](const std::vector<std::string>& ws, int rank) {
          auto words = parse_all(ws, rank);
          int n = rank;
          if (n <= 0)
            for (const Word& w : words) n = std::max(n, w.rank());
          return is_partial_free_basis(words, n).verdict;
        },
        py::arg("words"), py::arg("rank") = 0);
  m.def("whitehead_trace", [](const std::vector<std::string>& ws, int rank) {
          auto words = parse_all(ws, rank);
          int n = rank;
          if (n <= 0)
            for (const Word& w : words) n = std::max(n, w.rank());
          return whitehead_trace_json(is_partial_free_basis(words, n)).dump();
        },
        py::arg("words"), py::arg("rank") = 0);

  py::class_<StallingsGraph>(m, "StallingsGraph")
      .def_static("build",
                  [](const std::vector<std::string>& ws, int rank) {
                    auto words = parse_all(ws, rank);
                    int n = rank;
                    if (n <= 0)
                      for (const Word& w : words) n = std::max(n, w.rank());
                    return StallingsGraph::build(words, n);
                  },
                  py::arg("words"), py::arg("rank") = 0)
      .def("rank", &StallingsGraph::subgroup_rank)
      .def("basis",
           [](const StallingsGraph& s) {
             std::vector<std::string> out;
             for (const Word& w : s.subgroup_basis()) out.push_back(w.str());
             return out;
           })
      .def("contains",
           [](const StallingsGraph& s, const std::string& w) {
             return s.contains(Word::parse(w, s.rank_of_ambient()));
           })
      .def("index",
           [](const StallingsGraph& s) -> py::object {
             auto idx = s.index();
             if (auto* d = std::get_if<int>(&idx)) return py::int_(*d);
             return py::none();  // infinite
           })
      .def("to_dot", [](const StallingsGraph& s) { return stallings_to_dot(s); })
      .def("to_json", [](const StallingsGraph& s) { return stallings_to_json(s).dump(); });

  m.def("is_surjective", [](const std::vector<std::string>& ws, int rank) {
          auto words = parse_all(ws, rank);
          int n = rank;
          if (n <= 0)
            for (const Word& w : words) n = std::max(n, w.rank());
          return is_surjective(words, n);
        },
        py::arg("words"), py::arg("rank") = 0);

  m.def("systole", [](const std::string& graph_json, const std::vector<std::string>& lengths) {
          LoadedGraph lg = graph_from_json(nlohmann::json::parse(graph_json));
          std::vector<Rational> lens;
          if (lengths.empty()) {
            int mm = lg.graph.edge_pair_count();
            lens.assign(static_cast<std::size_t>(mm), Rational(1, mm));
          } else {
            for (const auto& s : lengths) lens.push_back(parse_rational(s));
          }
          Systole sy = systole(LengthStructure(lg.graph, std::move(lens)));
          return std::pair<std::string, std::vector<int>>(rational_str(sy.value), sy.witness.edges);
        },
        py::arg("graph_json"), py::arg("lengths") = std::vector<std::string>{});
}
