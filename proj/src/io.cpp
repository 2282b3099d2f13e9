#include "bdc/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace bdc
{

using nlohmann::json;

namespace
{

void require_schema(const json &j, const std::string &what)
{
    if (!j.is_object())
        throw InputError(what + " must be a JSON object");
    if (!j.contains("schema"))
        throw InputError(what + " has no \"schema\" field");
    if (!j["schema"].is_number_integer() || j["schema"].get<int>() != kSchemaVersion)
        throw InputError(what + " has unsupported schema (expected " + std::to_string(kSchemaVersion) + ")");
}

int label_from_json(const RootSystem &rs, const json &j, const std::string &what)
{
    if (!j.is_number_integer())
        throw InputError(what + " must be an integer simple-root label");
    const int v = j.get<int>();
    if (v < 1 || v > rs.rank())
        throw InputError(what + " " + std::to_string(v) + " is out of range 1.." + std::to_string(rs.rank()));
    return v - 1;
}

json parse_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

std::string label_list(const std::vector<int> &labels)
{
    std::string out;
    for (std::size_t k = 0; k < labels.size(); ++k)
        out += (k ? "," : "") + std::string("a") + std::to_string(labels[k] + 1);
    return out;
}

}  // namespace

Scalar scalar_from_json(const json &j, const std::string &what)
{
    if (!j.is_string())
        throw InputError(what + " must be an exact scalar string such as \"1/2\" or \"1/2+3/4 i\"");
    try {
        return Scalar::parse(j.get<std::string>());
    } catch (const InputError &e) {
        throw InputError(what + ": " + e.what());
    }
}

json scalar_to_json(const Scalar &z)
{
    return z.str();
}

std::string canonical_shape(const std::string &text)
{
    std::string s;
    for (char c : text)
        s.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (const char *name : {"varsigma", "varsigma_mu"})
        if (s == name)
            return name;
    if (s == "omega_j")
        return "omega_J";
    if (s == "omega_mu_j")
        return "omega_mu_J";
    throw InputError("unknown sigma shape '" + text + "' (expected varsigma, varsigma_mu, omega_J or omega_mu_J)");
}

SigmaSpec sigma_from_json(const RootSystem &rs, const json &j)
{
    if (!j.is_object() || !j.contains("shape"))
        throw InputError("\"sigma\" must be an object with a \"shape\"");
    const std::string shape = canonical_shape(j["shape"].get<std::string>());
    DiagramAutomorphism mu = identity_automorphism(rs.rank());
    if (j.contains("mu")) {
        const json &m = j["mu"];
        if (!m.is_array() || static_cast<int>(m.size()) != rs.rank())
            throw InputError("\"mu\" must list the image of each of the " + std::to_string(rs.rank()) +
                             " simple roots");
        for (int i = 0; i < rs.rank(); ++i)
            mu.perm[i] = label_from_json(rs, m[i], "mu entry");
    }
    std::vector<int> J;
    if (j.contains("J")) {
        if (!j["J"].is_array())
            throw InputError("\"J\" must be an array of simple-root labels");
        for (const json &v : j["J"])
            J.push_back(label_from_json(rs, v, "J entry"));
    }
    const bool wants_mu = shape == "varsigma_mu" || shape == "omega_mu_J";
    if (wants_mu == mu.is_identity())
        throw InputError(wants_mu ? "shape " + shape + " needs a nontrivial \"mu\""
                                  : "shape " + shape + " takes no nontrivial \"mu\"");
    if (shape.rfind("varsigma", 0) == 0 && !J.empty())
        throw InputError("\"J\" applies to omega shapes only");
    SigmaSpec s = shape.rfind("varsigma", 0) == 0 ? SigmaSpec::varsigma_mu(mu) : SigmaSpec::omega_mu_J(mu, J);
    s.validate(rs);
    return s;
}

json sigma_to_json(const SigmaSpec &s)
{
    json j;
    j["shape"] = s.shape();
    json mu = json::array();
    for (int v : s.mu.perm)
        mu.push_back(v + 1);
    j["mu"] = mu;
    json J = json::array();
    for (int v : s.J)
        J.push_back(v + 1);
    j["J"] = J;
    return j;
}

BDTriple triple_from_json(const RootSystem &rs, const json &j)
{
    if (j.is_null() || (j.is_string() && j.get<std::string>() == "trivial"))
        return BDTriple{};
    if (!j.is_array())
        throw InputError("\"triple\" must be \"trivial\" or an array of [source, target] label pairs");
    std::vector<std::pair<int, int>> mapping;
    for (const json &p : j) {
        if (!p.is_array() || p.size() != 2)
            throw InputError("each triple entry must be a [source, target] pair");
        mapping.emplace_back(label_from_json(rs, p[0], "triple source"), label_from_json(rs, p[1], "triple target"));
    }
    return validate_bd_triple(rs, std::move(mapping));
}

json triple_to_json(const BDTriple &t)
{
    if (t.is_trivial())
        return "trivial";
    json out = json::array();
    for (std::size_t k = 0; k < t.gamma1.size(); ++k)
        out.push_back(json::array({t.gamma1[k] + 1, t.gamma2[k] + 1}));
    return out;
}

ContinuousParameter lambda_from_json(const RootSystem &rs, const json &j)
{
    if (!j.is_object())
        throw InputError("\"lambda\" must be an object mapping \"i,j\" (i < j) to exact scalars");
    const LambdaCoordinates coords{rs.rank()};
    RationalVector x(coords.num_vars(), 0);
    for (const auto &[key, value] : j.items()) {
        int a = 0, b = 0;
        char comma = 0;
        std::istringstream in(key);
        if (!(in >> a >> comma >> b) || comma != ',' || !in.eof() || a < 1 || b <= a || b > rs.rank())
            throw InputError("lambda key '" + key + "' must be \"i,j\" with 1 <= i < j <= rank");
        const Scalar z = scalar_from_json(value, "lambda[" + key + "]");
        x[coords.re_index(a - 1, b - 1)] = z.re();
        x[coords.im_index(a - 1, b - 1)] = z.im();
    }
    return coords.point(rs, x);
}

json lambda_to_json(const ContinuousParameter &lambda)
{
    json out = json::object();
    const int n = lambda.rank();
    const LambdaCoordinates coords{n};
    const RationalVector x = coords.coordinates(lambda);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const Scalar z(x[coords.re_index(a, b)], x[coords.im_index(a, b)]);
            if (!z.is_zero())
                out[std::to_string(a + 1) + "," + std::to_string(b + 1)] = z.str();
        }
    return out;
}

CaseSpec case_from_json(const json &j)
{
    require_schema(j, "case file");
    if (!j.contains("type") || !j["type"].is_string())
        throw InputError("case file needs a \"type\" such as \"A3\"");
    if (!j.contains("sigma"))
        throw InputError("case file needs a \"sigma\" object");
    CaseSpec c;
    c.type = DynkinType::parse(j["type"].get<std::string>());
    const RootSystem rs(c.type);
    c.sigma = sigma_from_json(rs, j["sigma"]);
    c.triple = triple_from_json(rs, j.contains("triple") ? j["triple"] : json());
    if (j.contains("lambda"))
        c.lambda = lambda_from_json(rs, j["lambda"]);
    if (j.contains("t"))
        c.t = scalar_from_json(j["t"], "t");
    if (j.contains("phases")) {
        if (!j["phases"].is_array())
            throw InputError("\"phases\" must be an array of exact scalars");
        for (const json &p : j["phases"])
            c.phases.push_back(scalar_from_json(p, "phase"));
        if (!c.phases.empty() && c.phases.size() != c.triple.gamma1.size())
            throw InputError("\"phases\" needs one entry per root in the domain of the triple");
        for (const Scalar &p : c.phases)
            if (p.is_zero())
                throw InputError("phases must be nonzero");
    }
    return c;
}

json case_to_json(const CaseSpec &c)
{
    json j;
    j["schema"] = kSchemaVersion;
    j["type"] = c.type.name();
    j["sigma"] = sigma_to_json(c.sigma);
    j["triple"] = triple_to_json(c.triple);
    if (c.lambda)
        j["lambda"] = lambda_to_json(*c.lambda);
    j["t"] = c.t_or_default().str();
    if (!c.phases.empty()) {
        json p = json::array();
        for (const Scalar &z : c.phases)
            p.push_back(z.str());
        j["phases"] = p;
    }
    return j;
}

CaseSpec load_case_file(const std::string &path)
{
    return case_from_json(parse_json_file(path));
}

ResolvedCase resolve_case(const CaseSpec &c)
{
    const NormalizedBasis base = make_basis(c.type);
    const Scalar t = c.t_or_default();
    std::vector<Scalar> phases = c.phases;
    if (phases.empty() && !c.triple.is_trivial()) {
        auto found = sigma_compatible_phases(make_adapted_form(base, c.sigma), c.triple, t);
        if (!found)
            throw InputError("no admissible lambda for this sigma and triple");
        phases = *found;
    }
    CaseContext ctx = make_context(base, c.sigma, c.triple, phases);
    ContinuousParameter lambda;
    if (c.lambda) {
        lambda = *c.lambda;
    } else {
        const AffineSolutionSpace space = admissible_lambda_space(ctx.rs(), c.sigma, c.triple);
        if (space.empty)
            throw InputError("no admissible lambda for this sigma and triple");
        lambda = LambdaCoordinates{ctx.rs().rank()}.point(ctx.rs(), space.particular);
    }
    CaseSpec spec = c;
    spec.phases = phases;
    return ResolvedCase{spec, std::move(ctx), std::move(lambda), t, c.lambda.has_value()};
}

json resolved_case_to_json(const ResolvedCase &r)
{
    CaseSpec c = r.spec;
    c.lambda = r.lambda;
    c.t = r.t;
    return case_to_json(c);
}

ClassifyConfig config_from_json(const json &j)
{
    require_schema(j, "config file");
    ClassifyConfig c = ClassifyConfig::defaults();
    for (const auto &[key, value] : j.items()) {
        if (key == "schema")
            continue;
        if (key == "types") {
            if (!value.is_array() || value.empty())
                throw InputError("\"types\" must be a nonempty array such as [\"A2\", \"B3\"]");
            c.types.clear();
            for (const json &t : value)
                c.types.push_back(DynkinType::parse(t.get<std::string>()));
        } else if (key == "sigma") {
            if (!value.is_array())
                throw InputError("\"sigma\" must be an array of shape names");
            c.shapes.clear();
            for (const json &s : value)
                c.shapes.push_back(canonical_shape(s.get<std::string>()));
        } else if (key == "triples") {
            c.triples = parse_triple_filter(value.get<std::string>());
        } else if (key == "exploratory") {
            if (!value.is_boolean())
                throw InputError("\"exploratory\" must be true or false");
            c.exploratory = value.get<bool>();
        } else if (key == "t") {
            c.t = scalar_from_json(value, "t");
        } else if (key == "jobs") {
            if (!value.is_number_integer() || value.get<int>() < 1)
                throw InputError("\"jobs\" must be a positive integer");
            c.jobs = value.get<int>();
        } else {
            throw InputError("unknown config key '" + key + "'");
        }
    }
    return c;
}

ClassifyConfig load_config_file(const std::string &path)
{
    return config_from_json(parse_json_file(path));
}

std::string sigma_descriptor(const SigmaSpec &s)
{
    std::string out = s.shape();
    if (!s.mu.is_identity()) {
        out += " mu=(";
        for (std::size_t k = 0; k < s.mu.perm.size(); ++k)
            out += (k ? "," : "") + std::to_string(s.mu.perm[k] + 1);
        out += ")";
    }
    if (s.is_omega())
        out += " J={" + label_list(s.J) + "}";
    return out;
}

json record_to_json(const CaseRecord &r)
{
    json j;
    j["schema"] = kSchemaVersion;
    j["type"] = r.type.name();
    j["sigma"] = sigma_to_json(r.sigma);
    j["triple"] = triple_to_json(r.triple);
    j["exploratory"] = r.exploratory;
    j["admissible"] = r.admissible;
    j["group_type"] = r.verdict;
    j["lambda"] = {{"admissible_dim", r.lambda_admissible_dim},
                   {"solution_dim", r.lambda_solution_dim},
                   {"condition", r.lambda_condition}};
    json p = json::array();
    for (const Scalar &z : r.phases)
        p.push_back(z.str());
    j["phases"] = p;
    j["painted_root"] = r.painted_root.empty() ? json() : json(r.painted_root);
    return j;
}

json roots_to_json(const RootSystem &rs)
{
    json j;
    j["type"] = rs.type().name();
    j["rank"] = rs.rank();
    j["positive_roots"] = rs.num_positive();
    j["dimension"] = rs.dim();
    j["highest_root"] = highest_root(rs);
    json roots = json::array();
    for (int a = 0; a < rs.num_positive(); ++a)
        roots.push_back({{"label", root_label(rs.root(a))},
                         {"coefficients", rs.root(a)},
                         {"height", height(rs.root(a))},
                         {"half_norm", rs.half_norm(a).get_str()}});
    j["roots"] = roots;
    json gram = json::array();
    for (const auto &row : rs.killing_gram()) {
        json r = json::array();
        for (const Rational &q : row)
            r.push_back(q.get_str());
        gram.push_back(r);
    }
    j["killing_gram"] = gram;
    return j;
}

json tensor_to_json(const NormalizedBasis &b, const SparseTensor2 &t)
{
    json out = json::array();
    for (const auto &[k, c] : t.entries())
        out.push_back({{"left", b.label(k.first)}, {"right", b.label(k.second)}, {"coefficient", c.str()}});
    return out;
}

json vector_to_json(const NormalizedBasis &b, const SparseVec &v)
{
    json out = json::array();
    for (const auto &[k, c] : v.entries())
        out.push_back({{"basis", b.label(k)}, {"coefficient", c.str()}});
    return out;
}

std::string classification_table(const std::vector<CaseRecord> &records)
{
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"algebra", "sigma", "triple", "group type", "lambda condition", "painted root"});
    for (const CaseRecord &r : records) {
        std::string verdict = r.verdict ? "yes" : "no";
        if (r.exploratory)
            verdict += " (exploratory)";
        rows.push_back({r.type.name(), sigma_descriptor(r.sigma), r.triple.str(), verdict, r.lambda_condition,
                        r.painted_root.empty() ? "-" : r.painted_root});
    }
    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto &row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            os << rows[r][c];
            if (c + 1 < rows[r].size())
                os << std::string(width[c] - rows[r][c].size() + 2, ' ');
        }
        os << '\n';
        if (r == 0) {
            std::size_t total = 0;
            for (std::size_t c = 0; c < width.size(); ++c)
                total += width[c] + (c + 1 < width.size() ? 2 : 0);
            os << std::string(total, '-') << '\n';
        }
    }
    return os.str();
}

}  // namespace bdc
