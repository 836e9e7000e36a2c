#include "pcsp/cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pcsp/constructions/free_structure.hpp"
#include "pcsp/constructions/power_structure.hpp"
#include "pcsp/constructions/pp_power.hpp"
#include "pcsp/constructions/relax.hpp"
#include "pcsp/core/named.hpp"
#include "pcsp/minions/derive.hpp"
#include "pcsp/minions/kw.hpp"
#include "pcsp/minions/polymorphism.hpp"
#include "pcsp/weak/gadget.hpp"

namespace pcsp::cli {

namespace {

struct Outcome {
    Json report;
    int code = Found;
    std::optional<std::string> text;   // replaces the JSON report when set
};

Json hom_json(const std::vector<Element>& map)
{
    return {{"map", map}};
}

Json verdict(bool found, Json report = Json::object())
{
    report["verdict"] = found ? "found" : "not_found";
    return report;
}

Outcome decided(bool found, Json report = Json::object())
{
    return {verdict(found, std::move(report)), found ? Found : NotFound, std::nullopt};
}

Outcome boolean(bool value, Json report = Json::object())
{
    report["verdict"] = value ? "true" : "false";
    return {std::move(report), value ? Found : NotFound, std::nullopt};
}

std::vector<std::size_t> parse_list(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size() || v < 0)
                throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::BadParam, "'" + item + "' is not a non-negative integer");
        }
    }
    if (out.empty())
        throw Error(ErrorKind::BadParam, "empty list");
    return out;
}

Template load_template(const std::vector<std::string>& files)
{
    if (files.size() != 2)
        throw Error(ErrorKind::BadParam, "a template needs exactly two structures");
    return make_template(load_structure(files[0]), load_structure(files[1]));
}

minions::MinorCondition load_condition(const std::string& spec, std::size_t arity)
{
    std::ifstream probe(spec);
    if (probe)
        return condition_from_json(read_json_file(spec));
    auto name = spec;
    if (auto colon = spec.find(':'); colon != std::string::npos) {
        name = spec.substr(0, colon);
        arity = parse_list(spec.substr(colon + 1)).front();
    }
    return minions::named_condition(minions::parse_named_condition(name), arity);
}

Json witness_json(const minions::MinorCondition& c, const minions::Witness& w)
{
    Json out = Json::object();
    for (std::size_t s = 0; s < w.size(); ++s)
        out[c.symbols[s].name] = to_json(w[s]);
    return out;
}

std::vector<std::size_t> schedule_from(const Template& t, const std::string& schedule, std::size_t d, std::size_t r)
{
    if (! schedule.empty())
        return parse_list(schedule);
    std::vector<std::size_t> k;
    for (const auto& v : weak::dr_arity_schedule(t, d, r).k)
        k.push_back(pas::to_size(v, "schedule entry"));
    return k;
}

Json bundle_json(const weak::GadgetBundle& b)
{
    Json family = Json::array();
    Json solutions = Json::array();
    for (std::size_t i = 0; i < b.family.size(); ++i) {
        family.push_back(b.member_label(i));
        solutions.push_back(b.solutions[i]);
    }
    return {{"family", family}, {"gamma", to_json(b.gamma)}, {"s_size", b.s_size}, {"schedule", b.schedule},
        {"solutions", solutions}};
}

Json chain_json(const std::vector<pas::VarSet>& chain, const std::vector<std::string>& vars)
{
    Json out = Json::array();
    for (auto u : chain) {
        std::vector<std::string> names;
        for (std::size_t v = 0; v < vars.size(); ++v)
            if ((u >> v) & 1U)
                names.push_back(vars[v]);
        out.push_back(names);
    }
    return out;
}

}  // namespace

Settings load_settings(const std::string& path)
{
    Settings s;
    const auto j = read_json_file(path);
    try {
        if (j.contains("cells"))
            s.caps.cells = j.at("cells").get<std::size_t>();
        if (j.contains("arity"))
            s.caps.arity = j.at("arity").get<std::size_t>();
        if (j.contains("tuples"))
            s.caps.tuples = j.at("tuples").get<std::size_t>();
        if (j.contains("chains"))
            s.caps.chains = j.at("chains").get<std::size_t>();
        if (j.contains("deadline"))
            s.deadline_seconds = j.at("deadline").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ValidationError, "config " + path + ": " + e.what());
    }
    return s;
}

Structure load_structure(const std::string& spec)
{
    if (spec.rfind("named:", 0) == 0) {
        const auto rest = spec.substr(6);
        auto colon = rest.find(':');
        if (colon == std::string::npos) {
            // "K3" is short for "K:3"
            const auto digits = rest.find_last_not_of("0123456789") + 1;
            if (digits > 0 && digits < rest.size())
                return named_structure(rest.substr(0, digits),
                    static_cast<long long>(parse_list(rest.substr(digits)).front()));
            return named_structure(rest, 0);
        }
        return named_structure(rest.substr(0, colon),
            static_cast<long long>(parse_list(rest.substr(colon + 1)).front()));
    }
    return structure_from_json(read_json_file(spec));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Finite promise-CSP toolkit", "pcsp"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<double> deadline_flag;
    std::string output_path;
    bool timing = false;
    app.add_option("--config", config_path, "JSON file with caps and deadline (overrides PCSP_CAPS)");
    app.add_option("--deadline", deadline_flag, "Deadline in seconds");
    app.add_option("--output", output_path, "Write the report here instead of stdout");
    app.add_flag("--timing", timing, "Include wall-clock time in the report");
    std::optional<std::size_t> max_cells, max_arity, max_tuples, max_chains;
    app.add_option("--max-cells", max_cells, "Cell cap");
    app.add_option("--max-arity", max_arity, "Arity cap");
    app.add_option("--max-tuples", max_tuples, "Tuple cap");
    app.add_option("--max-chains", max_chains, "Chain cap");

    Settings settings;
    auto deadline = [&] {
        return Deadline::after_seconds(deadline_flag.value_or(settings.deadline_seconds));
    };

    std::function<Outcome()> action;
    auto verb = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

    // shared option storage
    std::string from, to, verify, structure_file, table_file, def_file, base_file, instance_file, pas_m_file,
        condition, semantics = "standard", family_file, map_file, xi_file, schedule_text_opt, values_text,
        hom_file, derive_from = "cyclic", derive_to = "all", named_name;
    std::vector<std::string> tmpl, relaxed, minion, pas_files;
    std::size_t limit = 0, arity = 0, n = 0, m = 0, d = 1, r = 1, projections = 0;
    long long param = 0;
    bool json_out = false, assume_no_cyclic = false;

    auto* hom = verb("hom", "Find a homomorphism, or verify one with --verify");
    hom->add_option("--from", from)->required();
    hom->add_option("--to", to)->required();
    hom->add_option("--verify", verify, "Map file to check instead of searching");
    hom->callback([&] {
        action = [&] {
            const auto a = load_structure(from);
            const auto b = load_structure(to);
            if (! verify.empty()) {
                const auto map = map_from_json(read_json_file(verify));
                return boolean(is_homomorphism(map, a, b), {{"witness", hom_json(map)}});
            }
            auto h = find_homomorphism(a, b, deadline());
            Json rep = Json::object();
            if (h)
                rep["witness"] = hom_json(h->map());
            return decided(h.has_value(), rep);
        };
    });

    auto* enumerate = verb("enumerate", "List homomorphisms in lexicographic order");
    enumerate->add_option("--from", from)->required();
    enumerate->add_option("--to", to)->required();
    enumerate->add_option("--limit", limit, "0 = all");
    enumerate->callback([&] {
        action = [&] {
            Json list = Json::array();
            for (const auto& h : enumerate_homomorphisms(load_structure(from), load_structure(to), limit, deadline()))
                list.push_back(h.map());
            return decided(! list.empty(), {{"count", list.size()}, {"homomorphisms", list}});
        };
    });

    auto* pol = verb("pol", "Enumerate polymorphisms of one arity");
    pol->add_option("--template", tmpl)->expected(2)->required();
    pol->add_option("--arity", arity)->required();
    pol->add_option("--limit", limit, "0 = all");
    pol->callback([&] {
        action = [&] {
            Json list = Json::array();
            for (const auto& f :
                minions::enumerate_polymorphisms(load_template(tmpl), arity, limit, deadline(), settings.caps))
                list.push_back(to_json(f));
            return decided(! list.empty(), {{"count", list.size()}, {"polymorphisms", list}});
        };
    });

    auto* minor_check = verb("minor-check", "Decide a minor condition over Pol(A,B)");
    minor_check->add_option("--template", tmpl)->expected(2)->required();
    minor_check->add_option("--condition", condition, "cyclic[:k], area_rare, siggers, olsak, or a file")
        ->required();
    minor_check->add_option("--arity", arity, "Arity for cyclic");
    minor_check->callback([&] {
        action = [&] {
            const auto c = load_condition(condition, arity);
            minions::ConditionStats stats;
            auto w = minions::satisfy_minor_condition(load_template(tmpl), c, deadline(), settings.caps, &stats);
            Json rep = {{"condition", to_json(c)},
                {"stats", {{"cells", stats.cells}, {"classes", stats.classes}, {"constraints", stats.constraints}}}};
            if (w)
                rep["witness"] = witness_json(c, *w);
            return decided(w.has_value(), rep);
        };
    });

    auto* derive = verb("derive", "Derive area-rare, Siggers and Olsak operations");
    derive->add_option("--table", table_file)->required();
    derive->add_option("--from", derive_from, "cyclic or area_rare")->check(CLI::IsMember({"cyclic", "area_rare"}));
    derive->add_option("--to", derive_to, "siggers, olsak or all")->check(CLI::IsMember({"siggers", "olsak", "all"}));
    derive->callback([&] {
        action = [&] {
            auto f = table_from_json(read_json_file(table_file));
            Json rep = Json::object();
            if (derive_from == "cyclic") {
                f = minions::derive_from_cyclic(f);
                rep["area_rare"] = to_json(f);
            }
            if (derive_to != "olsak")
                rep["siggers"] = to_json(minions::derive_from_area_rare(f, minions::SixAryTarget::Siggers));
            if (derive_to != "siggers")
                rep["olsak"] = to_json(minions::derive_from_area_rare(f, minions::SixAryTarget::Olsak));
            return decided(true, rep);
        };
    });

    auto* width1 = verb("width1", "Search for a homomorphism from the power structure of A to B");
    width1->add_option("--template", tmpl)->expected(2)->required();
    width1->add_option("--semantics", semantics)->check(CLI::IsMember({"standard", "literal"}));
    width1->callback([&] {
        action = [&] {
            const auto t = load_template(tmpl);
            const auto sem = constructions::parse_semantics(semantics);
            auto h = constructions::width1_check(t, sem, deadline(), settings.caps);
            Json rep = {{"semantics", semantics}};
            if (h) {
                Json labelled = Json::object();
                const auto u = constructions::power_structure(t.a, sem, settings.caps);
                for (std::size_t i = 0; i < h->size(); ++i)
                    labelled[u.label(static_cast<Element>(i))] = (*h)(static_cast<Element>(i));
                rep["witness"] = {{"map", h->map()}, {"by_subset", labelled}};
            }
            return decided(h.has_value(), rep);
        };
    });

    auto* power = verb("power-structure", "Build the power structure of a structure");
    power->add_option("--structure", structure_file)->required();
    power->add_option("--semantics", semantics)->check(CLI::IsMember({"standard", "literal"}));
    power->callback([&] {
        action = [&] {
            const auto u = constructions::power_structure(load_structure(structure_file),
                constructions::parse_semantics(semantics), settings.caps);
            return decided(true, {{"semantics", semantics}, {"structure", to_json(u)}});
        };
    });

    auto* free = verb("free", "Free structure of a minion slice generated by a structure");
    free->add_option("--generator", structure_file)->required();
    free->add_option("--template", tmpl, "Use the slice of Pol(A,B)")->expected(2);
    free->add_option("--projections", projections, "Use the projection minion on this many elements");
    free->callback([&] {
        action = [&] {
            const auto gen = load_structure(structure_file);
            const auto bound = constructions::free_structure_bound(gen);
            if (tmpl.empty() == (projections == 0))
                throw Error(ErrorKind::BadParam, "give exactly one of --template and --projections");
            const auto slice = tmpl.empty()
                ? minions::MinionSlice::projections(projections, bound)
                : minions::MinionSlice::polymorphisms(load_template(tmpl), bound, deadline(), settings.caps);
            const auto f = constructions::free_structure(slice, gen, settings.caps);
            Json elements = Json::array();
            for (const auto& e : f.elements)
                elements.push_back(to_json(e));
            return decided(true, {{"elements", elements}, {"structure", to_json(f.structure)}});
        };
    });

    auto* pp_apply = verb("pp-apply", "Apply a pp-power definition to a template");
    pp_apply->add_option("--template", tmpl)->expected(2)->required();
    pp_apply->add_option("--def", def_file)->required();
    pp_apply->callback([&] {
        action = [&] {
            const auto t = constructions::pp_power_apply(load_template(tmpl),
                pp_power_from_json(read_json_file(def_file)), deadline(), settings.caps);
            return decided(true, {{"c", to_json(t.a)}, {"d", to_json(t.b)}});
        };
    });

    auto* pp_reduce = verb("pp-reduce", "Translate an instance through a pp-power gadget");
    pp_reduce->add_option("--def", def_file)->required();
    pp_reduce->add_option("--base", base_file, "Structure over the base signature")->required();
    pp_reduce->add_option("--instance", instance_file)->required();
    pp_reduce->callback([&] {
        action = [&] {
            const auto red = constructions::pp_reduce_instance(pp_power_from_json(read_json_file(def_file)),
                load_structure(base_file).signature(), load_structure(instance_file));
            return decided(true, {{"origin", red.origin}, {"structure", to_json(red.structure)}});
        };
    });

    auto* relax = verb("relax-check", "Check that --relaxed (C,D) is a homomorphic relaxation of --template (A,B)");
    relax->add_option("--template", tmpl)->expected(2)->required();
    relax->add_option("--relaxed", relaxed)->expected(2)->required();
    relax->callback([&] {
        action = [&] {
            auto w = constructions::relaxation_reduce(load_template(tmpl), load_template(relaxed), deadline());
            Json rep = Json::object();
            if (w)
                rep["witness"] = {{"b_to_d", w->b_to_d.map()}, {"c_to_a", w->c_to_a.map()}};
            return decided(w.has_value(), rep);
        };
    });

    auto* arities = verb("pas-arities", "Arity schedule for a consistent PAS sequence");
    arities->add_option("--n", n)->required();
    arities->add_option("--m", m)->required();
    arities->add_option("--values", values_text, "Comma-separated value bounds d_0,...,d_r")->required();
    arities->add_flag("--json", json_out);
    arities->callback([&] {
        action = [&] {
            const auto s = pas::pas_arities(n, m, parse_list(values_text));
            Outcome o{to_json(s), Found, std::nullopt};
            if (! json_out)
                o.text = schedule_text(s);
            return o;
        };
    });

    auto* pas_solve = verb("pas-solve", "Search for an m-solution of a PAS");
    pas_solve->add_option("--pas", pas_m_file)->required();
    pas_solve->add_option("--m", m)->required();
    pas_solve->callback([&] {
        action = [&] {
            const auto p = pas_from_json(read_json_file(pas_m_file));
            auto f = pas::find_m_solution(p, m, deadline(), settings.caps);
            Json rep = Json::object();
            if (f) {
                Json named = Json::object();
                for (std::size_t v = 0; v < f->size(); ++v)
                    named[p.vars()[v]] = (*f)[v];
                rep["witness"] = {{"map", *f}, {"by_variable", named}};
            }
            return decided(f.has_value(), rep);
        };
    });

    auto* pas_cons = verb("pas-consistent", "Check consistency of a PAS sequence");
    pas_cons->add_option("--pas", pas_files, "PAS files in sequence order")->required();
    pas_cons->callback([&] {
        action = [&] {
            std::vector<pas::PAS> seq;
            for (const auto& f : pas_files)
                seq.push_back(pas_from_json(read_json_file(f)));
            auto chain = pas::find_inconsistent_chain(seq, settings.caps);
            Json rep = Json::object();
            if (chain)
                rep["counterexample"] = chain_json(*chain, seq.front().vars());
            return boolean(! chain.has_value(), rep);
        };
    });

    auto* dr_schedule = verb("dr-schedule", "Arity schedule used by the (d,r) reduction");
    dr_schedule->add_option("--template", tmpl)->expected(2)->required();
    dr_schedule->add_option("--d", d);
    dr_schedule->add_option("--r", r);
    dr_schedule->add_flag("--json", json_out);
    dr_schedule->callback([&] {
        action = [&] {
            const auto s = weak::dr_arity_schedule(load_template(tmpl), d, r);
            Outcome o{to_json(s), Found, std::nullopt};
            if (! json_out)
                o.text = schedule_text(s);
            return o;
        };
    });

    auto* dr_reduce = verb("dr-reduce", "Build the gadget instance of the (d,r) reduction");
    dr_reduce->add_option("--instance", instance_file)->required();
    dr_reduce->add_option("--template", tmpl)->expected(2)->required();
    dr_reduce->add_option("--schedule", schedule_text_opt, "Comma-separated arities; default from --d/--r");
    dr_reduce->add_option("--d", d);
    dr_reduce->add_option("--r", r);
    dr_reduce->callback([&] {
        action = [&] {
            const auto t = load_template(tmpl);
            const auto b = weak::dr_reduce_instance(load_structure(instance_file), t,
                schedule_from(t, schedule_text_opt, d, r), deadline(), settings.caps);
            return decided(true, bundle_json(b));
        };
    });

    auto* dr_extract = verb("dr-extract", "Extract the PAS sequence from a map into the free structure");
    dr_extract->add_option("--instance", instance_file)->required();
    dr_extract->add_option("--template", tmpl)->expected(2)->required();
    dr_extract->add_option("--schedule", schedule_text_opt);
    dr_extract->add_option("--d", d);
    dr_extract->add_option("--r", r);
    dr_extract->add_option("--minion", minion, "Template whose polymorphisms form the source minion")->expected(2);
    dr_extract->add_option("--xi", xi_file, "ξ table; default is the identity on the source slice");
    dr_extract->add_option("--map", map_file, "s: Γ(J) → free structure, by element index");
    dr_extract->add_option("--hom", hom_file, "h: J → C; s is built from the canonical homomorphism");
    dr_extract->add_option("--m", m, "Arity of the m-solution to search (default: max arity of C)");
    dr_extract->callback([&] {
        action = [&] {
            const auto t = load_template(tmpl);
            const auto b = weak::dr_reduce_instance(load_structure(instance_file), t,
                schedule_from(t, schedule_text_opt, d, r), deadline(), settings.caps);
            const auto gadget = weak::gadget_structure(b);
            const auto source = minion.empty() ? t : load_template(minion);
            const auto slice = minions::MinionSlice::polymorphisms(source,
                constructions::free_structure_bound(gadget), deadline(), settings.caps);
            const auto free = constructions::free_structure(slice, gadget, settings.caps);
            const auto xi = xi_file.empty() ? weak::identity_weak_hom(slice) : xi_from_json(read_json_file(xi_file));

            std::vector<Element> s;
            if (! map_file.empty()) {
                s = map_from_json(read_json_file(map_file));
            } else if (! hom_file.empty()) {
                const auto canon = weak::canonical_gadget_hom(map_from_json(read_json_file(hom_file)), b);
                s = compose(canon.map(), weak::projection_embedding(free, b.s_size));
            } else {
                throw Error(ErrorKind::BadParam, "give --map or --hom");
            }
            const auto ex = weak::extract_pas_sequence(s, free, xi, b);
            const bool consistent = pas::is_consistent(ex.sequence, settings.caps);
            const auto want = m ? m : t.a.signature().max_arity();
            auto solution = pas::find_m_solution(ex.sequence.front(), want, deadline(), settings.caps);
            Json seq = Json::array();
            std::size_t max_value = 0;
            for (const auto& p : ex.sequence) {
                seq.push_back(to_json(p));
                max_value = std::max(max_value, pas::pas_value(p));
            }
            Json rep = {{"consistent", consistent}, {"links_checked", ex.links_checked}, {"m", want},
                {"max_value", max_value}, {"sequence", seq}};
            if (solution)
                rep["witness"] = hom_json(*solution);
            return decided(solution.has_value(), rep);
        };
    });

    auto* kw = verb("kw", "Choice function from a homomorphism of the family power");
    kw->add_option("--template", tmpl)->expected(2)->required();
    kw->add_option("--family", family_file, "JSON list of label lists")->required();
    kw->add_option("--map", map_file, "h on the disjoint union of powers")->required();
    kw->add_flag("--assume-no-cyclic", assume_no_cyclic, "Skip the cyclic-polymorphism check");
    kw->callback([&] {
        action = [&] {
            const auto family = read_json_file(family_file).get<minions::LabelFamily>();
            minions::KwOptions opts;
            opts.assume_no_cyclic = assume_no_cyclic;
            opts.deadline = deadline();
            opts.caps = settings.caps;
            const auto res = minions::kw_extract(family, load_template(tmpl),
                map_from_json(read_json_file(map_file)), opts);
            Json choices = Json::array();
            for (std::size_t i = 0; i < family.size(); ++i) {
                auto labels = family[i];
                std::sort(labels.begin(), labels.end());
                choices.push_back({{"member", labels}, {"chosen", res.chosen[i]}, {"smallest", to_json(res.smallest[i])}});
            }
            return decided(true, {{"choices", choices}});
        };
    });

    auto* named = verb("named", "Emit a built-in structure");
    named->add_option("--name", named_name)->required();
    named->add_option("--param", param);
    named->callback([&] {
        action = [&] { return decided(true, {{"structure", to_json(named_structure(named_name, param))}}); };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Found;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Found;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return Failure;
    }

    try {
        if (! config_path.empty())
            settings = load_settings(config_path);
        else if (const char* env = std::getenv("PCSP_CAPS"); env && *env)
            settings = load_settings(env);
        // flags win over the config file
        settings.caps.cells = max_cells.value_or(settings.caps.cells);
        settings.caps.arity = max_arity.value_or(settings.caps.arity);
        settings.caps.tuples = max_tuples.value_or(settings.caps.tuples);
        settings.caps.chains = max_chains.value_or(settings.caps.chains);

        const auto start = std::chrono::steady_clock::now();
        Outcome o = action();
        if (timing) {
            const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
            o.report["timing_ms"] = ms.count();
        }
        if (! o.text)
            o.report["verb"] = app.get_subcommands().front()->get_name();
        const std::string bytes = o.text ? *o.text : dump(o.report);
        if (output_path.empty()) {
            out << bytes;
        } else {
            std::ofstream file(output_path, std::ios::binary);
            if (! file || ! (file << bytes))
                throw Error(ErrorKind::IOError, "cannot write " + output_path);
        }
        return o.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::DeadlineExceeded ? Timeout : Failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return Failure;
    }
}

}  // namespace pcsp::cli
