#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "tmtime/codec.hpp"
#include "tmtime/compactness.hpp"
#include "tmtime/error.hpp"
#include "tmtime/gadgets.hpp"
#include "tmtime/json_io.hpp"
#include "tmtime/machine.hpp"
#include "tmtime/part.hpp"
#include "tmtime/simulator.hpp"

namespace py = pybind11;
using namespace tmtime;
using Json = nlohmann::json;
namespace tj = tmtime::json;

// Results cross the boundary as JSON text; the Python package decodes them.
namespace {

std::optional<BoundsOverride> override_of(std::optional<std::uint64_t> ell, std::optional<std::uint64_t> r) {
  if (ell.has_value() != r.has_value()) throw Error(ErrorCode::InvalidArgument, "ell and r must be given together");
  if (!ell) return std::nullopt;
  return BoundsOverride{*ell, *r};
}

std::string bounds_json(const Bounds& b) {
  return Json{{"C", b.C},
              {"D", b.D},
              {"q", b.q},
              {"ell", b.ell.str()},
              {"r", b.r.str()},
              {"overridden", b.overridden},
              {"ell_eff", b.ell_eff},
              {"r_eff", b.r_eff}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_tmtime, mod) {
  mod.doc() = "One-tape NTM running-time analysis (native core)";

  // Library errors become _tmtime.Error with a `code` attribute naming the ErrorCode.
  static PyObject* error_type = py::exception<Error>(mod, "Error").release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::handle(error_type)(py::str(e.what()));
      inst.attr("code") = py::str(std::string(error_code_name(e.code())));
      PyErr_SetObject(error_type, inst.ptr());
    }
  });

  py::class_<Machine>(mod, "Machine")
      .def_static("from_text", &machine_from_text, py::arg("text"))
      .def_static("load", &load_machine_file, py::arg("path"))
      .def("to_text", &format_machine_text)
      .def_property_readonly("state_count", &Machine::state_count)
      .def_property_readonly("deterministic", &Machine::deterministic)
      .def_property_readonly("states",
                             [](const Machine& m) {
                               return std::vector<std::string>(m.state_names().begin(), m.state_names().end());
                             })
      .def_property_readonly("tape_alphabet",
                             [](const Machine& m) {
                               return std::vector<std::string>(m.symbols().begin(), m.symbols().end());
                             })
      .def_property_readonly("input_alphabet",
                             [](const Machine& m) {
                               std::vector<std::string> out;
                               for (SymbolId a : m.input_alphabet()) out.push_back(m.symbol_name(a));
                               return out;
                             })
      .def_property_readonly("rules",
                             [](const Machine& m) {
                               std::vector<py::tuple> out;
                               for (const auto& r : m.description().rules)
                                 out.push_back(py::make_tuple(r.from, r.read, r.to, r.write,
                                                              r.move == Direction::Left ? "L" : "R"));
                               return out;
                             })
      .def("__eq__", [](const Machine& a, const Machine& b) { return a == b; })
      .def("__repr__", [](const Machine& m) {
        return "<Machine " + std::to_string(m.state_count()) + " states, " + std::to_string(m.rules().size()) +
               " rules>";
      });

  mod.def("compose", &compose, py::arg("first"), py::arg("second"));

  mod.def(
      "_computations",
      [](const Machine& m, const std::string& input, std::uint64_t max_steps) {
        Json a = Json::array();
        for (const auto& c : enumerate_computations(m, parse_word(m, input), max_steps)) a.push_back(tj::to_json(m, c));
        return a.dump();
      },
      py::arg("machine"), py::arg("input"), py::arg("max_steps"));

  mod.def(
      "_crossing_sequences",
      [](const Machine& m, const std::string& input, const std::vector<RuleIndex>& choices) {
        Json j = Json::object();
        for (const auto& [b, crs] : crossing_sequences(m, parse_word(m, input), choices)) {
          Json seq = Json::array();
          for (StateId s : crs) seq.push_back(m.state_name(s));
          j[std::to_string(b)] = seq;
        }
        return j.dump();
      },
      py::arg("machine"), py::arg("input"), py::arg("choices"));

  mod.def(
      "_check_input",
      [](const Machine& m, const std::string& input, std::uint64_t C, std::uint64_t D) {
        auto v = check_input(m, parse_word(m, input), C, D);
        return v ? tj::to_json(m, *v).dump() : std::string("null");
      },
      py::arg("machine"), py::arg("input"), py::arg("C"), py::arg("D"));

  mod.def(
      "_part_time",
      [](const Machine& m, const std::string& part, const std::string& crs) {
        return part_time(m, parse_word(m, part), parse_states(m, crs)).str();
      },
      py::arg("machine"), py::arg("part"), py::arg("crs"));

  mod.def(
      "_bounds",
      [](std::uint64_t q, std::uint64_t C, std::uint64_t D, std::optional<std::uint64_t> ell,
         std::optional<std::uint64_t> r) { return bounds_json(bounds(q, C, D, override_of(ell, r))); },
      py::arg("q"), py::arg("C"), py::arg("D"), py::arg("ell") = py::none(), py::arg("r") = py::none());

  mod.def(
      "_crossing_budget", [](std::uint64_t q, std::uint64_t C) { return crossing_budget(q, C).str(); }, py::arg("q"),
      py::arg("C"));

  mod.def(
      "_decide",
      [](const Machine& m, std::uint64_t C, std::uint64_t D, std::optional<std::uint64_t> ell,
         std::optional<std::uint64_t> r, unsigned jobs, std::uint64_t max_nodes, std::uint64_t expand_cap) {
        DecideOptions opts;
        opts.override = override_of(ell, r);
        opts.limits.jobs = jobs;
        opts.limits.max_nodes = max_nodes;
        opts.expand_cap = expand_cap;
        DecisionReport rep;
        {
          py::gil_scoped_release release;
          rep = decide(m, C, D, opts);
        }
        return tj::to_json(m, rep).dump();
      },
      py::arg("machine"), py::arg("C"), py::arg("D"), py::arg("ell") = py::none(), py::arg("r") = py::none(),
      py::arg("jobs") = 1, py::arg("max_nodes") = 200'000'000, py::arg("expand_cap") = 1'000'000);

  mod.def(
      "_find_violation",
      [](const Machine& m, std::uint64_t C, std::uint64_t D, const std::string& strategy, std::uint64_t budget,
         std::uint64_t seed, std::optional<std::uint64_t> ell, std::optional<std::uint64_t> r) {
        FindOptions opts;
        if (strategy == "exhaustive") opts.strategy = SearchStrategy::Exhaustive;
        else if (strategy == "random") opts.strategy = SearchStrategy::Random;
        else throw Error(ErrorCode::InvalidArgument, "strategy must be 'exhaustive' or 'random'");
        opts.budget = budget;
        opts.seed = seed;
        opts.override = override_of(ell, r);
        std::optional<Witness> w;
        {
          py::gil_scoped_release release;
          w = find_violation(m, C, D, opts);
        }
        return w ? tj::to_json(m, *w).dump() : std::string("null");
      },
      py::arg("machine"), py::arg("C"), py::arg("D"), py::arg("strategy") = "exhaustive",
      py::arg("budget") = 1'000'000, py::arg("seed") = 0, py::arg("ell") = py::none(), py::arg("r") = py::none());

  mod.def(
      "_verify_witness",
      [](const Machine& m, std::uint64_t C, std::uint64_t D, const std::string& witness) {
        return verify_witness(m, C, D, tj::witness_from_json(m, Json::parse(witness)));
      },
      py::arg("machine"), py::arg("C"), py::arg("D"), py::arg("witness"));

  mod.def(
      "encode", [](const Machine& m) { return codec::encode(m).str(); }, py::arg("machine"));
  mod.def(
      "decode", [](const std::string& bits) { return codec::decode(codec::BitString(bits)); }, py::arg("bits"));
  mod.def(
      "encode_composition",
      [](const std::vector<std::string>& codes) {
        std::vector<codec::BitString> bs;
        for (const auto& c : codes) bs.emplace_back(c);
        return codec::encode_composition(bs).str();
      },
      py::arg("codes"));

  mod.def(
      "_gadget",
      [](const Machine& M, const std::string& input, std::uint64_t C, std::uint64_t D, std::uint64_t K,
         std::uint64_t k, const std::string& mode) {
        gadgets::GadgetSpec spec{K, k, C, D, gadgets::GadgetMode::Reject};
        if (mode == "count") spec.mode = gadgets::GadgetMode::Count;
        else if (mode != "reject") throw Error(ErrorCode::InvalidArgument, "mode must be 'reject' or 'count'");
        gadgets::Gadget g = gadgets::build_gadget(M, parse_word(M, input), spec);
        return py::make_tuple(g.machine, tj::to_json(g.manifest).dump());
      },
      py::arg("machine"), py::arg("input"), py::arg("C"), py::arg("D"), py::arg("K") = 1, py::arg("k") = 1,
      py::arg("mode") = "reject");
}
