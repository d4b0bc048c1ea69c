#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "geolink/completion.hpp"
#include "geolink/linking.hpp"

namespace py = pybind11;
using namespace geolink;

namespace {

CycleSet cycles_from_strings(const std::vector<std::string>& forms) {
  std::vector<BQF> fs;
  fs.reserve(forms.size());
  for (const auto& s : forms) fs.push_back(parse_bqf(s));
  return CycleSet::from_forms(fs);
}

py::dict cycle_dict(const GeodesicCycle& c) {
  py::list forms;
  for (const BQF& f : c.forms) forms.append(f.str());
  py::dict d;
  d["disc"] = c.disc.get_si();
  d["forms"] = forms;
  d["homology"] = py::make_tuple(c.homology[0].get_si(),
                                 c.homology[1].get_si(),
                                 c.homology[2].get_si());
  d["length"] = c.forms.size();
  return d;
}

Lattice11 make_lattice(const std::string& gram, const std::string& automorph,
                       const std::string& shift) {
  Lattice11 lat;
  lat.gram = parse_symt(gram);
  lat.automorph = parse_mat2(automorph);
  if (!shift.empty()) {
    auto semi = shift.find(';');
    if (semi == std::string::npos)
      throw std::invalid_argument("shift must be \"s11,s12;s21,s22\"");
    auto p1 = shift.substr(0, semi), p2 = shift.substr(semi + 1);
    auto c1 = p1.find(','), c2 = p2.find(',');
    lat.shift = {{{parse_rat(p1.substr(0, c1)), parse_rat(p1.substr(c1 + 1))},
                  {parse_rat(p2.substr(0, c2)), parse_rat(p2.substr(c2 + 1))}}};
  }
  return lat;
}

}  // namespace

PYBIND11_MODULE(_geolink, m) {
  m.doc() = "exact linking data for modular geodesics on Y1(5)";

  m.def("classgroup", [](long disc) {
    py::list out;
    for (const FormClass& c : classes(Int(disc))) {
      py::dict d;
      d["rep"] = c.rep.str();
      d["disc"] = c.disc.get_si();
      d["content"] = c.content.get_si();
      out.append(d);
    }
    return out;
  }, py::arg("disc"), "form classes of a negative discriminant");

  m.def("reduce_form", [](const std::string& form) {
    auto r = reduce_posdef(parse_bqf(form));
    return py::make_tuple(r.reduced.str(), r.gamma.str());
  }, py::arg("form"));

  m.def("traverse", [](const std::string& form) {
    return cycle_dict(traverse(parse_bqf(form)));
  }, py::arg("form"), "geodesic cycle of an indefinite form through F");

  m.def("winding", [](const std::string& point_form,
                      const std::vector<std::string>& cycle_forms) {
    CycleSet cs = cycles_from_strings(cycle_forms);
    OrientedPoint pt{parse_bqf(point_form)};
    int sign = pt.sign();
    BQF pos = sign > 0 ? pt.form : -pt.form;
    BQF red = reduce_point_to_F({pos}).form;
    Rat w(0);
    for (const auto& c : cs.cycles) w += winding({red}, c);
    if (sign < 0) w = -w;
    return rat_to_string(w);
  }, py::arg("point_form"), py::arg("cycle_forms"));

  m.def("m_coeff", [](const std::string& T, const std::string& q) {
    return m_coeff(parse_symt(T), parse_bqf(q)).get_si();
  }, py::arg("T"), py::arg("q"));

  m.def("zero_cycle", [](const std::string& T) {
    ZeroCycle z = zero_cycle(parse_symt(T));
    py::list pts;
    for (const auto& e : z.entries) {
      py::dict d;
      d["form"] = e.form.str();
      d["sign"] = e.sign;
      d["weight"] = e.weight.get_si();
      pts.append(d);
    }
    py::dict out;
    out["disc"] = z.disc.get_si();
    out["points"] = pts;
    return out;
  }, py::arg("T"));

  m.def("iota_prime", [](const std::string& T,
                         const std::vector<std::string>& cycle_forms) {
    return rat_to_string(iota_prime(parse_symt(T),
                                    cycles_from_strings(cycle_forms)));
  }, py::arg("T"), py::arg("cycle_forms"));

  m.def("iota", [](const std::string& T,
                   const std::vector<std::string>& cycle_forms) {
    return rat_to_string(iota_full(parse_symt(T),
                                   cycles_from_strings(cycle_forms)));
  }, py::arg("T"), py::arg("cycle_forms"));

  m.def("series", [](const std::string& max_det,
                     const std::vector<std::string>& cycle_forms,
                     bool nonsquare_only) {
    CoeffTable tab = series_table(parse_rat(max_det),
                                  cycles_from_strings(cycle_forms),
                                  nonsquare_only);
    py::list out;
    for (const auto& r : tab.rows) {
      py::dict d;
      d["T"] = r.T.str();
      d["det"] = rat_to_string(r.det);
      d["value"] = rat_to_string(r.value);
      d["surface_dependent"] = r.surface_dependent;
      out.append(d);
    }
    return out;
  }, py::arg("max_det"), py::arg("cycle_forms"),
     py::arg("nonsquare_only") = true);

  m.def("growth", [](const std::string& max_det,
                     const std::vector<std::string>& cycle_forms) {
    GrowthReport rep = growth_check(parse_rat(max_det),
                                    cycles_from_strings(cycle_forms));
    return py::make_tuple(rep.max_ratio, rep.argmax.str());
  }, py::arg("max_det"), py::arg("cycle_forms"));

  m.def("k0", [](double x, double tol) {
    RealTol r = bessel_k0(x, tol);
    return py::make_tuple(r.value, r.err);
  }, py::arg("x"), py::arg("tol") = 1e-10);

  m.def("wstar", [](double x1, double x2, double tol) {
    RealTol r = w_star(x1, x2, tol);
    return py::make_tuple(r.value, r.err);
  }, py::arg("x1"), py::arg("x2"), py::arg("tol") = 1e-10);

  m.def("rho", [](const std::string& gram, const std::string& automorph,
                  const std::string& T, const std::string& shift,
                  int window_start, int periods) {
    Lattice11 lat = make_lattice(gram, automorph, shift);
    return rho_indef(lat, parse_symt(T), window_start, periods).get_si();
  }, py::arg("gram"), py::arg("automorph"), py::arg("T"),
     py::arg("shift") = "", py::arg("window_start") = 0,
     py::arg("periods") = 1);

  m.def("beta", [](const std::string& T, const std::string& v,
                   const std::function<double(const std::string&)>& pos_rep,
                   const std::string& gram, const std::string& automorph,
                   const std::string& shift, long N, double tol,
                   const std::string& index_factor) {
    Lattice11 lat = make_lattice(gram, automorph, shift);
    auto rep = [&pos_rep](const SymT& Tpp) { return pos_rep(Tpp.str()); };
    BetaResult r = beta_coeff(parse_symt(T), parse_symt(v), rep, lat, Int(N),
                              tol, parse_rat(index_factor));
    py::dict d;
    d["value"] = r.value;
    d["err"] = r.err;
    d["delta_max"] = r.delta_max;
    d["terms"] = r.terms;
    return d;
  }, py::arg("T"), py::arg("v"), py::arg("pos_rep"), py::arg("gram"),
     py::arg("automorph"), py::arg("shift") = "", py::arg("N") = 1,
     py::arg("tol") = 1e-8, py::arg("index_factor") = "1");
}
