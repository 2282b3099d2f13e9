// Python bindings. Cases and configs travel as JSON text in the case-file
// schema; the package wrapper converts to and from Python objects.

#include "bdc/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace bdc;
using nlohmann::json;

namespace
{

json parse_text(const std::string &text)
{
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

std::string roots(const std::string &type)
{
    return roots_to_json(build_root_system(DynkinType::parse(type))).dump();
}

std::string check(const std::string &case_text)
{
    const ResolvedCase r = resolve_case(case_from_json(parse_text(case_text)));
    const CoidealVerdict v = coideal_check(r.ctx, r.lambda, r.t);
    json out{{"schema", kSchemaVersion}, {"case", resolved_case_to_json(r)}, {"coideal", v.is_coideal}};
    if (v.witness)
        out["witness"] = {{"generator_index", v.witness->generator_index},
                          {"generator", vector_to_json(r.ctx.basis(), v.witness->generator)}};
    return out.dump();
}

std::string solve(const std::string &case_text)
{
    const CaseSpec c = case_from_json(parse_text(case_text));
    CaseSpec unknown = c;
    unknown.lambda.reset();
    const CaseRecord rec = evaluate_case(unknown);
    return record_to_json(rec).dump();
}

std::string run_classify(const std::string &config_text, int jobs)
{
    ClassifyConfig config = config_from_json(parse_text(config_text));
    if (jobs > 0)
        config.jobs = jobs;
    std::vector<CaseRecord> records;
    {
        py::gil_scoped_release release;
        records = classify(config);
    }
    json out = json::array();
    for (const CaseRecord &r : records)
        out.push_back(record_to_json(r));
    return out.dump();
}

bool painted(const std::string &type, const std::vector<int> &J)
{
    const RootSystem rs = build_root_system(DynkinType::parse(type));
    std::vector<int> zero_based;
    for (int j : J) {
        if (j < 1 || j > rs.rank())
            throw InputError("simple root label out of range: " + std::to_string(j));
        zero_based.push_back(j - 1);
    }
    return painted_root_criterion(rs, zero_based);
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact coideal checks for real forms of complex simple Lie algebras";
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    m.attr("schema_version") = kSchemaVersion;
    m.def("roots", &roots, py::arg("type"), "Root data of a Dynkin type as JSON text.");
    m.def("check", &check, py::arg("case"), "Coideal verdict for a case given as JSON text.");
    m.def("solve_lambda", &solve, py::arg("case"), "Classification record of a case, solving for lambda.");
    m.def("classify", &run_classify, py::arg("config"), py::arg("jobs") = 0,
          "Classification records for a config given as JSON text.");
    m.def("painted_root_criterion", &painted, py::arg("type"), py::arg("J"),
          "Single simple root outside J (1-based labels) with coefficient 1 in the highest root.");
}
