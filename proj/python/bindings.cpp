// Python module kagome._core. Structured results cross the boundary as JSON
// text; the package wrapper decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "kagome/cftp.hpp"
#include "kagome/exact.hpp"
#include "kagome/io.hpp"
#include "kagome/minimal.hpp"
#include "kagome/render.hpp"
#include "kagome/verify.hpp"

namespace py = pybind11;
using namespace kagome;

namespace {

// pybind11 holders cannot point to const; regions are never mutated after
// construction, so the Python side holds them through a non-const pointer.
using PyRegion = std::shared_ptr<Region>;
PyRegion wrap(const RegionPtr& r) { return std::const_pointer_cast<Region>(r); }

ChainVariant variant_of(const std::string& text) { return ChainVariant::parse(text); }

FlipSet flip_set_of(const std::string& text) {
  if (text == "all" || text == "general") return FlipSet::All;
  if (text == "restrained") return FlipSet::Restrained;
  throw std::invalid_argument("flip set must be 'all' or 'restrained', got '" + text + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kagome-lattice prototile tilings: flip chains, exact analysis and perfect sampling.";
  m.attr("SCHEMA_VERSION") = kSchemaVersion;

  py::register_exception<InvalidRegion>(m, "InvalidRegion", PyExc_ValueError);
  py::register_exception<InvalidTiling>(m, "InvalidTiling", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<Region, PyRegion>(m, "Region")
      .def_property_readonly("family", &Region::family)
      .def_property_readonly("n", &Region::size_param)
      .def_property_readonly("num_hexes", &Region::num_hexes)
      .def_property_readonly("num_vertices", &Region::num_vertices)
      .def_property_readonly("num_inner", &Region::num_inner)
      .def("to_json", [](const Region& r) { return region_to_json(r).dump(); })
      .def("__repr__", [](const Region& r) {
        return "<Region " + r.family() + ":" + std::to_string(r.size_param()) + " hexes=" +
               std::to_string(r.num_hexes()) + ">";
      });

  py::class_<Tiling>(m, "Tiling")
      .def_property_readonly("region", [](const Tiling& t) { return wrap(t.region_ptr()); })
      .def_property_readonly("assign", [](const Tiling& t) { return std::vector<int>(t.assign().begin(), t.assign().end()); })
      .def("heights", [](const Tiling& t) { return height_field(t).h; })
      .def("total_height", &total_height)
      .def("fish_count", &count_fish)
      .def("to_json", [](const Tiling& t) { return tiling_to_json(t).dump(); })
      .def("__eq__", [](const Tiling& a, const Tiling& b) {
        // Value equality: regions built separately from the same spec compare equal.
        const Region &ra = a.region(), &rb = b.region();
        return std::ranges::equal(ra.hexes(), rb.hexes()) && std::ranges::equal(ra.tris(), rb.tris()) &&
               std::ranges::equal(a.assign(), b.assign());
      });

  m.def("make_region", [](const std::string& spec) { return wrap(make_region(spec)); }, py::arg("spec"), "Region from 'lozenge:n', 'square:n', 'nonflat:n' or 'witness'.");
  m.def("region_from_json", [](const std::string& s) { return wrap(region_from_json(Json::parse(s))); });
  m.def("tiling_from_json", [](const std::string& s) { return tiling_from_json(Json::parse(s)); });
  m.def("find_tiling", [](const PyRegion& r) { return find_tiling(r); });
  m.def("contour_peel_minimal", [](const PyRegion& r) { return contour_peel_minimal(r); });
  m.def("is_minimal_restrained", &is_minimal_restrained);

  m.def(
      "run",
      [](const Tiling& t, const std::string& variant, std::uint64_t steps, std::uint64_t seed) {
        py::gil_scoped_release unlock;
        return run(t, variant_of(variant), steps, seed);
      },
      py::arg("tiling"), py::arg("variant"), py::arg("steps"), py::arg("seed"));

  m.def(
      "graph_stats",
      [](const PyRegion& r, const std::string& flip_set) {
        py::gil_scoped_release unlock;
        return graph_stats_json(enumerate(r, flip_set_of(flip_set))).dump();
      },
      py::arg("region"), py::arg("flip_set") = "all");
  m.def(
      "ledger",
      [](const PyRegion& r, const std::string& variant) {
        py::gil_scoped_release unlock;
        const auto v = variant_of(variant);
        const auto g = enumerate(r, v.kind == ChainVariant::Kind::Restrained ? FlipSet::Restrained : FlipSet::All);
        return ledger_json(g, path_coupling_ledger(g, v), v).dump();
      },
      py::arg("region"), py::arg("variant"));
  m.def(
      "mixing_time",
      [](const PyRegion& r, const std::string& variant, double eps) {
        py::gil_scoped_release unlock;
        const auto v = variant_of(variant);
        const auto g = enumerate(r, v.kind == ChainVariant::Kind::Restrained ? FlipSet::Restrained : FlipSet::All);
        return exact_mixing_time(g, v, eps);
      },
      py::arg("region"), py::arg("variant"), py::arg("eps") = 0.25);

  m.def(
      "cftp_sample",
      [](const PyRegion& r, const std::string& variant, std::uint64_t seed, std::uint64_t budget) {
        py::gil_scoped_release unlock;
        CftpOptions opt;
        opt.budget = budget;
        const auto res = cftp_sample(r, variant_of(variant), seed, opt);
        return std::tuple{res.sample, res.window, res.total_steps};
      },
      py::arg("region"), py::arg("variant"), py::arg("seed"), py::arg("budget") = kDefaultStepBudget,
      "Exact sample; returns (tiling, window, total_steps).");
  m.def(
      "forward_coupling_time",
      [](const PyRegion& r, const std::string& variant, std::uint64_t seed, std::uint64_t budget) {
        py::gil_scoped_release unlock;
        CftpOptions opt;
        opt.budget = budget;
        opt.monitor_order = false;
        return forward_coupling_time(r, variant_of(variant), seed, opt);
      },
      py::arg("region"), py::arg("variant"), py::arg("seed"), py::arg("budget") = kDefaultStepBudget);

  m.def(
      "render_svg",
      [](const Tiling& t, const std::string& style, bool heights, bool flips) {
        RenderStyle s = style.empty() ? default_style() : style_from_json(Json::parse(style));
        s.show_heights = s.show_heights || heights;
        s.show_flips = s.show_flips || flips;
        return render(t, s);
      },
      py::arg("tiling"), py::arg("style") = "", py::arg("heights") = false, py::arg("flips") = false);
  m.def("region_area", &region_area);

  m.def(
      "verify",
      [](std::uint64_t ops, std::uint64_t seed) {
        py::gil_scoped_release unlock;
        VerifyOptions opt;
        opt.operations = ops;
        opt.seed = seed;
        std::vector<std::tuple<std::string, std::uint64_t, std::uint64_t, std::string>> out;
        for (const auto& r : verify_all(opt)) out.emplace_back(r.name, r.operations, r.violations, r.note);
        return out;
      },
      py::arg("operations") = 100000, py::arg("seed") = 1);
}
