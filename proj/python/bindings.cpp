// JSON-string interface to the core library. The Python package converts to
// and from dicts.

#include <pybind11/pybind11.h>

#include "locent/io.hpp"

namespace py = pybind11;
using namespace locent;
using locent::io::Json;

namespace {

struct Inputs {
  SFT sft;
  Cover cover;
};

Inputs load(const std::string& sft_json, const std::string& cover_json) {
  auto sft = io::sft_from_json(Json::parse(sft_json));
  auto cover = io::cover_from_json(Json::parse(cover_json), sft.alphabet(), sft.dim());
  return {std::move(sft), std::move(cover)};
}

FolnerSequence sequence(const std::string& folner, int dim) {
  if (!folner.empty() && folner.front() == '{') return io::folner_from_json(Json::parse(folner));
  return io::folner_from_name(folner, dim);
}

std::string top(const std::string& sft, const std::string& cover, std::size_t n_max, const std::string& folner) {
  const auto in = load(sft, cover);
  py::gil_scoped_release release;
  return io::to_json(h_top(in.sft, in.cover, sequence(folner, in.sft.dim()), n_max)).dump();
}

std::string measure(const std::string& sft, const std::string& cover, const std::string& mu_json, std::size_t n_max,
                    const std::string& kind, std::size_t refine, const std::string& folner) {
  const auto in = load(sft, cover);
  const auto mu = io::measure_from_json(Json::parse(mu_json), in.sft.alphabet(), in.sft.dim());
  const auto seq = sequence(folner, in.sft.dim());
  std::string k = kind;
  if (k == "auto") k = is_partition(in.sft, in.cover, in.cover.support()) ? "partition" : "cover";
  py::gil_scoped_release release;
  Json j;
  j["kind"] = k;
  if (k == "partition") {
    j["estimate"] = io::to_json(h_mu_partition(in.sft, mu, in.cover, seq, n_max));
  } else if (k == "minus") {
    j["estimate"] = io::to_json(h_mu_minus_cover(in.sft, mu, in.cover, seq, n_max));
  } else if (k == "cover") {
    const auto c = h_mu_cover(in.sft, mu, in.cover, seq, n_max, refine);
    j["refine"] = refine;
    j["estimate"] = io::to_json(c.estimate);
  } else {
    throw std::invalid_argument("kind must be auto, partition, cover or minus");
  }
  return j.dump();
}

std::string tile(const std::string& shapes_json, const std::string& target_json, double epsilon) {
  const auto target = io::subset_from_json(Json::parse(target_json));
  std::vector<FiniteSubset> shapes;
  for (const auto& s : Json::parse(shapes_json)) shapes.push_back(io::subset_from_json(s, target.dim()));
  py::gil_scoped_release release;
  const auto t = quasi_tile(shapes, target, epsilon);
  return io::to_json(t, verify_quasi_tiling(t)).dump();
}

std::size_t language_size(const std::string& sft_json, const std::string& window_json) {
  const auto sft = io::sft_from_json(Json::parse(sft_json));
  return language(sft, io::subset_from_json(Json::parse(window_json), sft.dim())).size();
}

std::string tuple_check(const std::string& sft_json, const std::string& points_json, std::size_t r_max,
                        std::size_t n_max) {
  const auto sft = io::sft_from_json(Json::parse(sft_json));
  const auto c = io::points_from_json(Json::parse(points_json), sft.alphabet(), sft.dim());
  py::gil_scoped_release release;
  return io::to_json(is_entropy_tuple(sft, c, r_max, n_max)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<io::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<Json::exception>(m, "JsonError", PyExc_ValueError);

  m.def("h_top", &top, py::arg("sft"), py::arg("cover"), py::arg("n_max"), py::arg("folner") = "box");
  m.def("h_mu", &measure, py::arg("sft"), py::arg("cover"), py::arg("measure"), py::arg("n_max"),
        py::arg("kind") = "auto", py::arg("refine") = 1, py::arg("folner") = "box");
  m.def("quasi_tile", &tile, py::arg("shapes"), py::arg("target"), py::arg("epsilon"));
  m.def("language_size", &language_size, py::arg("sft"), py::arg("window"));
  m.def("tuple_check", &tuple_check, py::arg("sft"), py::arg("points"), py::arg("r_max") = 1, py::arg("n_max") = 6);
  m.def("sft_entropy", [](const std::string& sft) { return sft_entropy(io::sft_from_json(Json::parse(sft))); },
        py::arg("sft"));
}
