#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zipstrata/coxeter.hpp"
#include "zipstrata/errors.hpp"
#include "zipstrata/fzip.hpp"
#include "zipstrata/grouplab.hpp"
#include "zipstrata/witt.hpp"
#include "zipstrata/zipdatum.hpp"

namespace py = pybind11;
using namespace zipstrata;
using coxeter::ParabolicType;
using coxeter::WeylElement;
using coxeter::WeylGroup;

namespace {

ff::Mat to_mat(const std::vector<std::vector<ff::Elem>>& rows) { return ff::Mat::from_rows(rows); }

py::dict label_dict(const fzip::StratumLabel& l) {
  py::dict d;
  d["w"] = l.w ? py::cast(l.w->window()) : py::none();
  d["word"] = l.word;
  d["length"] = l.length;
  d["ext"] = l.ext;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "zip strata, F-zips, Witt-vector displays and finite group censuses";

  // Base class first: later registrations take precedence.
  auto base = py::register_exception<Error>(m, "ZipstrataError");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<GroupMismatch>(m, "GroupMismatch", base.ptr());
  py::register_exception<PsiMismatch>(m, "PsiMismatch", base.ptr());
  auto invariant = py::register_exception<InvariantViolation>(m, "InvariantViolation", base.ptr());
  py::register_exception<ImKerMismatch>(m, "ImKerMismatch", invariant.ptr());
  py::register_exception<NotInGroup>(m, "NotInGroup", base.ptr());
  py::register_exception<SingularMatrix>(m, "SingularMatrix", base.ptr());
  py::register_exception<TooLarge>(m, "TooLarge", base.ptr());
  py::register_exception<Undetermined>(m, "Undetermined", base.ptr());
  py::register_exception<InconsistentGrowth>(m, "InconsistentGrowth", base.ptr());

  // coxeter
  py::class_<WeylElement>(m, "WeylElement")
      .def_property_readonly("window", &WeylElement::window)
      .def("length", &WeylElement::length)
      .def("reduced_word", &WeylElement::reduced_word)
      .def("inverse", &WeylElement::inverse)
      .def("__mul__", &WeylElement::operator*)
      .def("__eq__", [](const WeylElement& a, const WeylElement& b) { return a == b; })
      .def("__hash__", [](const WeylElement& a) { return coxeter::WeylElementHash{}(a); })
      .def("__str__", &WeylElement::word_string)
      .def("__repr__", [](const WeylElement& w) { return "<WeylElement " + w.word_string() + ">"; });

  py::class_<WeylGroup>(m, "WeylGroup")
      .def(py::init([](const std::string& family, int rank) { return WeylGroup(coxeter::parse_family(family), rank); }),
           py::arg("family"), py::arg("rank"))
      .def_property_readonly("rank", &WeylGroup::rank)
      .def_property_readonly("family", [](const WeylGroup& w) { return std::string(1, coxeter::family_letter(w.family())); })
      .def("order", &WeylGroup::order)
      .def("positive_root_count", &WeylGroup::positive_root_count)
      .def("identity", &WeylGroup::identity)
      .def("simple", &WeylGroup::simple)
      .def("from_word", &WeylGroup::from_word)
      .def("longest_element", py::overload_cast<>(&WeylGroup::longest_element, py::const_))
      .def("elements", &WeylGroup::elements)
      .def("min_coset_reps", [](const WeylGroup& w, const std::vector<int>& I) { return w.min_coset_reps(ParabolicType(I)); })
      .def("bruhat_leq", &WeylGroup::bruhat_leq)
      .def("diagram_automorphisms", &WeylGroup::diagram_automorphisms);

  // zipdatum
  py::class_<zip::ZipCombinatorics>(m, "ZipDatum")
      .def("psi", &zip::ZipCombinatorics::psi)
      .def_property_readonly("theta0", [](const zip::ZipCombinatorics& z) { return z.theta0; })
      .def_property_readonly("I", [](const zip::ZipCombinatorics& z) { return z.I.indices(); })
      .def_property_readonly("J", [](const zip::ZipCombinatorics& z) { return z.J.indices(); });
  m.def(
      "zip_from_cocharacter",
      [](const WeylGroup& w, const std::vector<int>& I, std::optional<std::vector<int>> delta, bool gl_center) {
        return zip::zip_from_cocharacter(w, ParabolicType(I), delta ? *delta : WeylGroup::identity_automorphism(w.rank()),
                                         gl_center);
      },
      py::arg("group"), py::arg("I"), py::arg("delta") = py::none(), py::arg("gl_center") = false);
  m.def(
      "build_zip",
      [](const WeylGroup& w, const std::vector<int>& I, const std::vector<int>& J, std::optional<std::vector<int>> delta) {
        return zip::build_zip(w, ParabolicType(I), ParabolicType(J),
                              delta ? *delta : WeylGroup::identity_automorphism(w.rank()));
      },
      py::arg("group"), py::arg("I"), py::arg("J"), py::arg("delta") = py::none());
  m.def("twisted_leq", &zip::twisted_leq);
  m.def("stratum_dimension", &zip::stratum_dimension);

  py::class_<zip::StratumPoset>(m, "StratumPoset")
      .def("__len__", &zip::StratumPoset::size)
      .def_readonly("carrier", &zip::StratumPoset::carrier)
      .def_readonly("lengths", &zip::StratumPoset::lengths)
      .def_readonly("dims", &zip::StratumPoset::dims)
      .def_readonly("covers", &zip::StratumPoset::covers)
      .def_readonly("has_relation", &zip::StratumPoset::has_relation);
  m.def("stratum_poset", [](const zip::ZipCombinatorics& z) { return zip::stratum_poset(z); });
  m.def("export_poset", [](const zip::StratumPoset& p, const std::string& format) {
    return zip::export_poset(p, zip::parse_export_format(format));
  });
  m.def("parse_poset_json", &zip::parse_poset_json);
  m.def("purity_check", [](const zip::ZipCombinatorics& z) {
    const auto r = zip::purity_check(z);
    py::dict d;
    d["pass"] = r.pass;
    d["strata"] = r.strata;
    d["boundary_pairs"] = r.boundary_pairs;
    py::list v;
    for (const auto& x : r.violations) v.append(py::make_tuple(x.w, x.below, x.length_drop));
    d["violations"] = v;
    return d;
  });

  // fzip
  py::class_<fzip::FZip>(m, "FZip")
      .def_readonly("n", &fzip::FZip::n)
      .def_readonly("p", &fzip::FZip::p)
      .def("type", &fzip::FZip::type)
      .def("to_json", [](const fzip::FZip& z) { return fzip::fzip_to_json(z); })
      .def("__eq__", [](const fzip::FZip& a, const fzip::FZip& b) { return a == b; });
  m.def("parse_fzip_json", &fzip::parse_fzip_json);
  m.def(
      "dieudonne_to_fzip",
      [](int p, int k, const std::vector<std::vector<ff::Elem>>& F, const std::vector<std::vector<ff::Elem>>& V) {
        return fzip::dieudonne_to_fzip(*ff::get_field(p, k), to_mat(F), to_mat(V));
      },
      py::arg("p"), py::arg("k"), py::arg("F"), py::arg("V"));
  m.def(
      "from_group_element",
      [](const fzip::FZipType& t, const std::vector<std::vector<ff::Elem>>& g, int p, int d, int s) {
        return fzip::from_group_element(t, to_mat(g), p, d, s);
      },
      py::arg("type"), py::arg("g"), py::arg("p"), py::arg("d") = 1, py::arg("s") = 1);
  m.def("tate_zip", &fzip::tate_zip, py::arg("weight"), py::arg("p") = 2, py::arg("d") = 1, py::arg("s") = 1);
  m.def("tensor", &fzip::tensor);
  m.def("dual", &fzip::dual);
  m.def(
      "classify", [](const fzip::FZip& z, int max_ext) { return label_dict(fzip::classify(z, max_ext)); },
      py::arg("zip"), py::arg("max_ext") = 3);
  m.def("enumerate_strata", &fzip::enumerate_strata);

  // grouplab
  m.def(
      "orbit_census_json",
      [](const std::vector<int>& blocks, int p, int d, int s) {
        const auto zd = lab::standard_datum(blocks, p, d, s);
        return lab::census_to_json(zd, lab::zip_orbit_census(zd));
      },
      py::arg("blocks"), py::arg("p"), py::arg("d") = 1, py::arg("s") = 1);
  m.def("counterexample_json", [](const std::vector<std::uint64_t>& qs) {
    return lab::counterexample_to_json(lab::counterexample_gl2(qs));
  });
  m.def("dimension_estimate", &lab::dimension_estimate, py::arg("sizes"), py::arg("q"));
  m.def(
      "lang_preimage_degree",
      [](int p, int k, const std::vector<std::vector<ff::Elem>>& g, int max_ext) -> std::optional<int> {
        const auto r = lab::lang_preimage(*ff::get_field(p, k), to_mat(g), k, max_ext);
        if (!r.found) return std::nullopt;
        return r.ext;
      },
      py::arg("p"), py::arg("k"), py::arg("g"), py::arg("max_ext") = 3);

  // witt
  py::class_<witt::GaloisRing, std::shared_ptr<witt::GaloisRing>>(m, "GaloisRing")
      .def(py::init([](int p, int d, int m) { return std::const_pointer_cast<witt::GaloisRing>(witt::make_ring(p, d, m)); }),
           py::arg("p"), py::arg("d"), py::arg("m"))
      .def("order", &witt::GaloisRing::order)
      .def("modulus", &witt::GaloisRing::modulus)
      .def("from_int", &witt::GaloisRing::from_int)
      .def("generator", &witt::GaloisRing::generator)
      .def("coeffs", &witt::GaloisRing::coeffs)
      .def("residue", &witt::GaloisRing::residue)
      .def("add", &witt::GaloisRing::add)
      .def("mul", &witt::GaloisRing::mul)
      .def("frobenius", &witt::GaloisRing::frobenius)
      .def("frobenius_inv", &witt::GaloisRing::frobenius_inv)
      .def("verschiebung", &witt::GaloisRing::verschiebung)
      .def("__repr__", &witt::GaloisRing::describe);
  m.def(
      "check_reduction_json",
      [](int n, int p, int d, int m, std::optional<int> d_block) {
        return witt::reduction_to_json(witt::check_reduction(n, p, d, m, d_block ? *d_block : witt::default_d_block(n)));
      },
      py::arg("n"), py::arg("p"), py::arg("d"), py::arg("m"), py::arg("d_block") = py::none());
  m.def(
      "display_census_json",
      [](int n, int p, int d, int m, std::optional<int> d_block) {
        return witt::census_to_json(
            witt::orbit_census_level(n, p, d, m, d_block ? *d_block : witt::default_d_block(n)));
      },
      py::arg("n"), py::arg("p"), py::arg("d"), py::arg("m"), py::arg("d_block") = py::none());
}
