#include "pcsp/cli/json_io.hpp"

#include <fstream>
#include <sstream>

namespace pcsp::cli {

namespace {

// Runs `body`, turning JSON type errors into ValidationError.
template <class F>
auto guarded(const char* what, F&& body)
{
    try {
        return body();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ValidationError, std::string(what) + ": " + e.what());
    }
}

std::size_t non_negative(const Json& j, const char* field)
{
    const auto v = j.get<long long>();
    if (v < 0)
        throw Error(ErrorKind::ValidationError, std::string(field) + " must be non-negative");
    return static_cast<std::size_t>(v);
}

std::vector<std::size_t> index_list(const Json& j, const char* field)
{
    std::vector<std::size_t> out;
    for (const auto& v : j)
        out.push_back(non_negative(v, field));
    return out;
}

Json signature_json(const Signature& sig)
{
    Json out = Json::array();
    for (const auto& s : sig)
        out.push_back({{"arity", s.arity}, {"name", s.name}});
    return out;
}

Signature signature_from(const Json& j)
{
    std::vector<Symbol> symbols;
    for (const auto& s : j)
        symbols.push_back({s.at("name").get<std::string>(), non_negative(s.at("arity"), "arity")});
    try {
        return Signature(std::move(symbols));
    } catch (const Error& e) {
        throw Error(ErrorKind::ValidationError, e.what());
    }
}

}  // namespace

Json parse_json(const std::string& text, const std::string& origin)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw Error(ErrorKind::ParseError,
            origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw Error(ErrorKind::IOError, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), path);
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

Json to_json(const Structure& s)
{
    Json out;
    if (s.has_labels())
        out["domain"] = s.labels();
    else
        out["domain"] = s.domain_size();
    out["signature"] = signature_json(s.signature());
    Json rels = Json::object();
    for (std::size_t r = 0; r < s.relations().size(); ++r)
        rels[s.signature()[r].name] = s.relation(r).tuples();
    out["relations"] = rels;
    return out;
}

Structure structure_from_json(const Json& j)
{
    RawStructure raw = guarded("structure", [&] {
        RawStructure r;
        const auto& dom = j.at("domain");
        if (dom.is_array()) {
            r.labels = dom.get<std::vector<std::string>>();
            r.domain = static_cast<long long>(r.labels.size());
        } else {
            r.domain = dom.get<long long>();
        }
        for (const auto& s : j.at("signature"))
            r.symbols.emplace_back(s.at("name").get<std::string>(), s.at("arity").get<long long>());
        if (j.contains("relations"))
            for (const auto& [name, tuples] : j.at("relations").items())
                r.relations[name] = tuples.get<std::vector<std::vector<long long>>>();
        return r;
    });
    try {
        return validate_structure(raw);
    } catch (const Error& e) {
        throw Error(ErrorKind::ValidationError, "structure failed validation", e.diagnostics());
    }
}

Json to_json(const minions::FunctionTable& f)
{
    return {{"arity", f.arity}, {"in", f.in}, {"out", f.out}, {"table", f.table}};
}

minions::FunctionTable table_from_json(const Json& j)
{
    return guarded("function table", [&] {
        std::vector<Element> table;
        for (const auto& v : j.at("table"))
            table.push_back(static_cast<Element>(non_negative(v, "table entry")));
        try {
            return minions::make_table(non_negative(j.at("arity"), "arity"), non_negative(j.at("in"), "in"),
                non_negative(j.at("out"), "out"), std::move(table));
        } catch (const Error& e) {
            throw Error(ErrorKind::ValidationError, e.what());
        }
    });
}

Json to_json(const minions::MinorCondition& c)
{
    Json symbols = Json::array();
    for (const auto& s : c.symbols)
        symbols.push_back({{"arity", s.arity}, {"name", s.name}});
    Json ids = Json::array();
    for (const auto& id : c.identities)
        ids.push_back({{"lhs", {c.symbols[id.lhs].name, id.sigma}}, {"rhs", {c.symbols[id.rhs].name, id.tau}}});
    return {{"identities", ids}, {"symbols", symbols}, {"vars", c.vars}};
}

minions::MinorCondition condition_from_json(const Json& j)
{
    auto c = guarded("minor condition", [&] {
        minions::MinorCondition c;
        std::map<std::string, std::size_t> index;
        for (const auto& s : j.at("symbols")) {
            const auto name = s.at("name").get<std::string>();
            if (! index.emplace(name, c.symbols.size()).second)
                throw Error(ErrorKind::ValidationError, "duplicate symbol " + name);
            c.symbols.push_back({name, non_negative(s.at("arity"), "arity")});
        }
        c.vars = non_negative(j.at("vars"), "vars");
        auto side = [&](const Json& s, std::size_t& sym, std::vector<std::size_t>& map) {
            const auto name = s.at(0).get<std::string>();
            auto it = index.find(name);
            if (it == index.end())
                throw Error(ErrorKind::ValidationError, "identity names unknown symbol " + name);
            sym = it->second;
            map = index_list(s.at(1), "variable");
        };
        for (const auto& id : j.at("identities")) {
            minions::Identity e;
            side(id.at("lhs"), e.lhs, e.sigma);
            side(id.at("rhs"), e.rhs, e.tau);
            c.identities.push_back(std::move(e));
        }
        return c;
    });
    try {
        minions::validate_condition(c);
    } catch (const Error& e) {
        throw Error(ErrorKind::ValidationError, e.what());
    }
    return c;
}

Json to_json(const constructions::PPPowerDef& def)
{
    Json formulas = Json::object();
    for (const auto& [name, f] : def.formulas) {
        Json atoms = Json::array();
        for (const auto& a : f.atoms) {
            Json atom = Json::array({a.symbol});
            for (const auto& v : a.args)
                atom.push_back(v);
            atoms.push_back(atom);
        }
        Json eq = Json::array();
        for (const auto& [x, y] : f.eq)
            eq.push_back({x, y});
        formulas[name] = {{"atoms", atoms}, {"eq", eq}, {"exists", f.exists}};
    }
    return {{"formulas", formulas}, {"n", def.n}, {"target_signature", signature_json(def.target)}};
}

constructions::PPPowerDef pp_power_from_json(const Json& j)
{
    return guarded("pp-power definition", [&] {
        constructions::PPPowerDef def;
        def.n = non_negative(j.at("n"), "n");
        def.target = signature_from(j.at("target_signature"));
        for (const auto& [name, f] : j.at("formulas").items()) {
            constructions::PPFormula formula;
            if (f.contains("exists"))
                formula.exists = f.at("exists").get<std::vector<std::string>>();
            for (const auto& atom : f.at("atoms")) {
                if (! atom.is_array() || atom.empty())
                    throw Error(ErrorKind::ValidationError, "atom must be [symbol, vars...]");
                constructions::PPAtom a{atom.at(0).get<std::string>(), {}};
                for (std::size_t i = 1; i < atom.size(); ++i)
                    a.args.push_back(atom.at(i).get<std::string>());
                formula.atoms.push_back(std::move(a));
            }
            if (f.contains("eq"))
                for (const auto& e : f.at("eq"))
                    formula.eq.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
            def.formulas[name] = std::move(formula);
        }
        return def;
    });
}

Json to_json(const pas::PAS& p)
{
    Json table = Json::array();
    for (const auto& [u, fs] : p.table()) {
        std::vector<std::string> names;
        for (std::size_t v = 0; v < p.var_count(); ++v)
            if ((u >> v) & 1U)
                names.push_back(p.vars()[v]);
        table.push_back({{"U", names}, {"fs", fs}});
    }
    return {{"k", p.k()}, {"n", p.n()}, {"table", table}, {"vars", p.vars()}};
}

pas::PAS pas_from_json(const Json& j)
{
    return guarded("PAS", [&] {
        const auto vars = j.at("vars").get<std::vector<std::string>>();
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < vars.size(); ++i)
            index[vars[i]] = i;
        std::map<pas::VarSet, std::vector<pas::Values>> table;
        for (const auto& entry : j.at("table")) {
            // keys may list variables in any order; values follow that order
            std::vector<std::pair<std::size_t, std::size_t>> order;
            const auto names = entry.at("U").get<std::vector<std::string>>();
            pas::VarSet u = 0;
            for (std::size_t i = 0; i < names.size(); ++i) {
                auto it = index.find(names[i]);
                if (it == index.end())
                    throw Error(ErrorKind::ValidationError, "unknown variable " + names[i]);
                if (it->second >= 64)
                    throw Error(ErrorKind::ValidationError, "at most 64 variables are supported");
                u |= pas::VarSet{1} << it->second;
                order.emplace_back(it->second, i);
            }
            if (pas::size_of(u) != names.size())
                throw Error(ErrorKind::ValidationError, "repeated variable in a key");
            std::sort(order.begin(), order.end());
            auto& slot = table[u];
            for (const auto& f : entry.at("fs")) {
                const auto raw = index_list(f, "value");
                if (raw.size() != names.size())
                    throw Error(ErrorKind::ValidationError, "assignment length differs from its key");
                pas::Values values;
                for (const auto& [var, pos] : order)
                    values.push_back(static_cast<Element>(raw[pos]));
                slot.push_back(std::move(values));
            }
        }
        try {
            return pas::PAS(vars, non_negative(j.at("n"), "n"), non_negative(j.at("k"), "k"), std::move(table));
        } catch (const Error& e) {
            throw Error(ErrorKind::ValidationError, e.what());
        }
    });
}

std::string to_string(const pas::BigInt& v)
{
    return v.str();
}

Json to_json(const pas::AritySchedule& s)
{
    auto big = [](const pas::BigInt& v) -> Json {
        if (v <= pas::BigInt(std::numeric_limits<std::int64_t>::max()))
            return v.convert_to<std::int64_t>();
        return v.str();
    };
    Json k = Json::array();
    for (const auto& v : s.k)
        k.push_back(big(v));
    Json levels = Json::array();
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
        const auto& lv = s.levels[i];
        Json entry = {{"i", i}, {"p", big(lv.p)}, {"l", big(lv.l)}};
        if (i >= 1) {
            entry["k_outer"] = big(lv.k_outer);
            entry["k_inner"] = big(lv.k_inner);
        }
        levels.push_back(entry);
    }
    return {{"k", k}, {"levels", levels}, {"m", s.m}, {"n", s.n}, {"rule", pas::to_string(s.rule)},
        {"values", s.values}};
}

std::string schedule_text(const pas::AritySchedule& s)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < s.k.size(); ++i)
        out << (i ? " " : "") << s.k[i];
    out << "\n";
    out << "rule " << pas::to_string(s.rule) << "\n";
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
        const auto& lv = s.levels[i];
        out << "level " << i << ":";
        if (i >= 1)
            out << " k''=" << lv.k_outer << " k'=" << lv.k_inner;
        out << " p=" << lv.p << " l=" << lv.l << "\n";
    }
    return out.str();
}

Json to_json(const weak::WeakMinionHom& xi)
{
    Json out = Json::array();
    for (const auto& [src, imgs] : xi.xi) {
        Json list = Json::array();
        for (const auto& g : imgs)
            list.push_back(to_json(g));
        out.push_back({{"imgs", list}, {"src", to_json(src)}});
    }
    return out;
}

weak::WeakMinionHom xi_from_json(const Json& j)
{
    return guarded("ξ table", [&] {
        weak::WeakMinionHom xi;
        xi.d = 0;
        for (const auto& entry : j) {
            auto src = table_from_json(entry.at("src"));
            std::vector<minions::FunctionTable> imgs;
            for (const auto& g : entry.at("imgs"))
                imgs.push_back(table_from_json(g));
            xi.d = std::max(xi.d, imgs.size());
            if (! xi.xi.emplace(std::move(src), std::move(imgs)).second)
                throw Error(ErrorKind::ValidationError, "ξ lists a source table twice");
        }
        xi.d = std::max<std::size_t>(xi.d, 1);
        return xi;
    });
}

std::vector<Element> map_from_json(const Json& j)
{
    return guarded("map", [&] {
        const Json* list = &j;
        if (j.is_object()) {
            if (j.contains("witness"))
                list = &j.at("witness").at("map");
            else
                list = &j.at("map");
        }
        std::vector<Element> out;
        for (const auto& v : *list)
            out.push_back(static_cast<Element>(non_negative(v, "map value")));
        return out;
    });
}

}  // namespace pcsp::cli
