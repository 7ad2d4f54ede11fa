// Command line front end: construct algebras from recipes, run analyses, and
// execute the named verification suites with deterministic reports.
//
// Exit codes: 0 all verdicts pass, 1 a verdict fails, 2 usage or validation
// error, 3 enumeration cap exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "semialg/report.hpp"
#include "semialg/suites.hpp"

using namespace semialg;

namespace {

struct CommonFlags {
    std::string recipe_text;
    std::string recipe_file;
    std::string out = "text";
    std::uint64_t seed = 0;
    std::uint64_t cap = kDefaultCap;
    std::size_t samples = 50;
    bool timings = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_recipe) {
    if (needs_recipe) {
        cmd->add_option("--recipe", flags.recipe_text, "construction recipe (see README)");
        cmd->add_option("--recipe-file", flags.recipe_file, "JSON recipe file");
    }
    cmd->add_option("--out", flags.out, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--seed", flags.seed, "deterministic seed");
    cmd->add_option("--cap", flags.cap, "enumeration budget");
    cmd->add_option("--samples", flags.samples, "sample count for randomized checks");
    cmd->add_flag("--timings", flags.timings, "include timings (breaks byte-identical output)");
}

Recipe load_recipe(const CommonFlags& flags) {
    if (!flags.recipe_file.empty()) {
        std::ifstream in(flags.recipe_file);
        if (!in) throw std::invalid_argument("cannot open recipe file: " + flags.recipe_file);
        json j;
        in >> j;
        return Recipe::from_json(j);
    }
    if (flags.recipe_text.empty())
        throw std::invalid_argument("a --recipe or --recipe-file is required");
    return Recipe::parse(flags.recipe_text);
}

int emit(Report& rep, const CommonFlags& flags,
         std::chrono::steady_clock::time_point start) {
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    rep.include_timings = flags.timings;
    rep.seed = flags.seed;
    if (flags.out == "json")
        std::cout << rep.to_json().dump(2) << "\n";
    else
        std::cout << rep.to_text();
    return rep.exit_code();
}

std::string verdict_name(SplitCertificate::Verdict v) {
    switch (v) {
        case SplitCertificate::Verdict::split_certified: return "split-certified";
        case SplitCertificate::Verdict::not_split_certified: return "not-split-certified";
        default: return "inconclusive";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semialg: exact nonassociative algebra construction and verification"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string suite_name;
    std::size_t tensor_power = 2;
    std::string with_recipe;
    std::uint32_t p_filter = 0;
    std::string field_filter;

    auto* c_construct = app.add_subcommand("construct", "build an algebra and summarize it");
    add_common(c_construct, flags, true);
    bool dump_full = false;
    c_construct->add_flag("--full", dump_full, "include the full algebra JSON in the findings");

    auto* c_nucleus = app.add_subcommand("nucleus", "dimensions of the nuclei and center");
    add_common(c_nucleus, flags, true);

    auto* c_division = app.add_subcommand("division", "exhaustive division check");
    add_common(c_division, flags, true);

    auto* c_irreducible = app.add_subcommand("irreducible", "irreducibility of the defining f");
    add_common(c_irreducible, flags, true);

    auto* c_semiassoc = app.add_subcommand("semiassoc", "semiassociativity verdict");
    add_common(c_semiassoc, flags, true);

    auto* c_split = app.add_subcommand("split", "splitting certificate");
    add_common(c_split, flags, true);

    auto* c_opposite = app.add_subcommand("opposite", "opposite algebra analysis");
    add_common(c_opposite, flags, true);

    auto* c_tensor = app.add_subcommand("tensor", "tensor powers / products");
    add_common(c_tensor, flags, true);
    c_tensor->add_option("--power", tensor_power, "tensor power (default 2)");
    c_tensor->add_option("--with", with_recipe, "second recipe to tensor with");

    auto* c_idem = app.add_subcommand("idempotents", "primitive idempotent counting");
    add_common(c_idem, flags, true);

    auto* c_verify = app.add_subcommand("verify", "run a named verification suite");
    c_verify->add_option("suite", suite_name, "suite name or 'all'")->required();
    add_common(c_verify, flags, false);
    c_verify->add_option("--p", p_filter, "restrict the differential suite to one prime");
    c_verify->add_option("--field", field_filter, "base field override where supported");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto start = std::chrono::steady_clock::now();
    try {
        Report rep;
        rep.seed = flags.seed;

        if (c_construct->parsed()) {
            Recipe r = load_recipe(flags);
            Constructed c = build_recipe(r);
            rep.command = "construct";
            rep.inputs["recipe"] = r.to_json();
            rep.findings["label"] = c.alg.label();
            rep.findings["field"] = c.alg.field()->to_string();
            rep.findings["dim"] = c.alg.dim();
            rep.findings["associative"] = c.alg.is_associative();
            if (dump_full) rep.findings["algebra"] = algebra_to_json(c.alg);
            return emit(rep, flags, start);
        }
        if (c_nucleus->parsed()) {
            Recipe r = load_recipe(flags);
            Constructed c = build_recipe(r);
            rep.command = "nucleus";
            rep.inputs["recipe"] = r.to_json();
            std::size_t nl = c.alg.nucleus_left().dim();
            std::size_t nm = c.alg.nucleus_middle().dim();
            std::size_t nr = c.alg.nucleus_right().dim();
            std::size_t nu = c.alg.nucleus_full().dim();
            std::size_t z = c.alg.center().dim();
            rep.findings["summary"] = "left nucleus dim " + std::to_string(nl) +
                                      ", middle nucleus dim " + std::to_string(nm) +
                                      ", right nucleus dim " + std::to_string(nr) +
                                      ", nucleus dim " + std::to_string(nu) + ", center dim " +
                                      std::to_string(z);
            rep.findings["left"] = nl;
            rep.findings["middle"] = nm;
            rep.findings["right"] = nr;
            rep.findings["nucleus"] = nu;
            rep.findings["center"] = z;
            return emit(rep, flags, start);
        }
        if (c_division->parsed()) {
            Recipe r = load_recipe(flags);
            Constructed c = build_recipe(r);
            rep.command = "division";
            rep.inputs["recipe"] = r.to_json();
            auto d = c.alg.is_division_exhaustive(flags.cap);
            rep.findings["division"] = d.division;
            if (d.witness) {
                json w;
                auto str = [](const std::vector<FieldElement>& v) {
                    json a = json::array();
                    for (const auto& x : v) a.push_back(x.to_string());
                    return a;
                };
                w["x"] = str(d.witness->first);
                w["y"] = str(d.witness->second);
                rep.findings["zero_divisor"] = w;
            }
            return emit(rep, flags, start);
        }
        if (c_irreducible->parsed()) {
            Recipe r = load_recipe(flags);
            Constructed c = build_recipe(r);
            rep.command = "irreducible";
            rep.inputs["recipe"] = r.to_json();
            if (!c.petit) throw std::invalid_argument("recipe has no defining polynomial");
            rep.findings["f"] = c.petit->f.to_string();
            bool irr = skew::is_irreducible_exhaustive(c.petit->f, flags.cap);
            rep.findings["irreducible"] = irr;
            bool shape_ok = true;
            for (int j = 1; j < c.petit->f.deg() && shape_ok; ++j) {
                for (const auto& x : c.petit->f.coeff(static_cast<std::size_t>(j)))
                    if (!x.is_zero()) shape_ok = false;
            }
            if (shape_ok && c.petit->f.deg() >= 2 && c.alg.field()->finite()) {
                auto nc = skew::norm_criterion(c.petit->f, flags.cap);
                rep.findings["norm_criterion"] = nc.no_solution;
                rep.findings["norm_criterion_guaranteed"] = nc.guaranteed;
                rep.verdicts.emplace_back("norm criterion agrees", nc.no_solution == irr);
            }
            return emit(rep, flags, start);
        }
        if (c_semiassoc->parsed()) {
            Recipe r = load_recipe(flags);
            Constructed c = build_recipe(r);
            rep.command = "semiassoc";
            rep.inputs["recipe"] = r.to_json();
            SemiassocReport sr = semiassoc_check(c.alg, c.etale_rows);
            rep.findings["etale"] = sr.etale;
            rep.findings["in_nucleus"] = sr.in_nucleus;
            rep.findings["dim_match"] = sr.dim_match;
            rep.findings["faithful_rank"] = sr.faithful_rank;
            rep.findings["expected_rank"] = sr.expected_rank;
            rep.verdicts.emplace_back("semiassociative", sr.semiassociative);
            return emit(rep, flags, start);
        }
        if (c_split->parsed()) {
            Recipe r = load_recipe(flags);
            Constructed c = build_recipe(r);
            rep.command = "split";
            rep.inputs["recipe"] = r.to_json();
            SplitCertificate cert =
                split_certificate(c.alg, c.etale_rows, c.nucleus_idempotent_bound);
            rep.findings["degree"] = cert.degree;
            rep.findings["idempotent_count"] = cert.idempotent_count;
            rep.findings["verdict"] = verdict_name(cert.verdict);
            rep.findings["note"] = cert.note;
            return emit(rep, flags, start);
        }
        if (c_opposite->parsed()) {
            Recipe r = load_recipe(flags);
            Constructed c = build_recipe(r);
            rep.command = "opposite";
            rep.inputs["recipe"] = r.to_json();
            AlgebraSC op = c.alg.opposite();
            rep.findings["nucleus_left_of_opposite"] = op.nucleus_left().dim();
            rep.findings["nucleus_right_of_opposite"] = op.nucleus_right().dim();
            if (c.petit && !c.petit->left) {
                PetitAlgebra leftp = left_petit_of_psi(*c.petit);
                MatrixF m = psi_coefficient_map(*c.petit, leftp);
                bool iso = op.verify_isomorphism(leftp.alg, m);
                rep.findings["psi_f"] = leftp.f.to_string();
                rep.verdicts.emplace_back("opposite = left Petit algebra of psi(f)", iso);
            }
            return emit(rep, flags, start);
        }
        if (c_tensor->parsed()) {
            Recipe r = load_recipe(flags);
            Constructed c = build_recipe(r);
            rep.command = "tensor";
            rep.inputs["recipe"] = r.to_json();
            AlgebraSC acc = c.alg;
            if (!with_recipe.empty()) {
                Constructed c2 = build_recipe(Recipe::parse(with_recipe));
                rep.inputs["with"] = c2.recipe.to_json();
                acc = AlgebraSC::tensor(acc, c2.alg);
            } else {
                rep.inputs["power"] = tensor_power;
                for (std::size_t k = 1; k < tensor_power; ++k) acc = AlgebraSC::tensor(acc, c.alg);
            }
            rep.findings["dim"] = acc.dim();
            Subalgebra nuc = acc.nucleus_full();
            rep.findings["nucleus_dim"] = nuc.dim();
            if (nuc.unital && nuc.induced().is_commutative() &&
                etale::trace_form_nondegenerate(nuc.induced())) {
                rep.findings["nucleus_primitive_idempotents"] =
                    etale::count_primitive_idempotents(nuc.induced());
            }
            return emit(rep, flags, start);
        }
        if (c_idem->parsed()) {
            Recipe r = load_recipe(flags);
            Constructed c = build_recipe(r);
            rep.command = "idempotents";
            rep.inputs["recipe"] = r.to_json();
            // count on the construction's canonical commutative subalgebra E,
            // and on the full nucleus whenever that is commutative etale
            Subalgebra e_sub = c.alg.subalgebra(c.etale_rows);
            const AlgebraSC& ei = e_sub.induced();
            if (ei.is_commutative() && ei.is_associative() &&
                etale::trace_form_nondegenerate(ei)) {
                rep.findings["etale_subalgebra_count"] = etale::count_primitive_idempotents(ei);
                auto prim = etale::primitive_idempotents(ei, flags.cap);
                json list = json::array();
                for (const auto& e : prim) {
                    // lift to algebra coordinates
                    auto v = c.alg.zero_vec();
                    for (std::size_t i = 0; i < e_sub.dim(); ++i)
                        for (std::size_t k = 0; k < c.alg.dim(); ++k)
                            v[k] = v[k] + e[i] * e_sub.basis.at(i, k);
                    json a = json::array();
                    for (const auto& x : v) a.push_back(x.to_string());
                    list.push_back(std::move(a));
                }
                rep.findings["primitive_idempotents"] = std::move(list);
            } else {
                rep.findings["etale_subalgebra_count"] = nullptr;
                rep.findings["note"] = "canonical subalgebra is not etale";
            }
            Subalgebra nuc = c.alg.nucleus_full();
            rep.findings["nucleus_dim"] = nuc.dim();
            if (nuc.induced().is_commutative() &&
                etale::trace_form_nondegenerate(nuc.induced()))
                rep.findings["nucleus_count"] =
                    etale::count_primitive_idempotents(nuc.induced());
            return emit(rep, flags, start);
        }
        if (c_verify->parsed()) {
            rep.command = "verify " + suite_name;
            suites::Options opt;
            opt.seed = flags.seed;
            opt.cap = flags.cap;
            opt.samples = flags.samples;
            rep.inputs["seed"] = flags.seed;
            rep.inputs["cap"] = flags.cap;
            rep.inputs["samples"] = flags.samples;
            if (!field_filter.empty()) {
                rep.inputs["field"] = field_filter;
                if (suite_name == "split-quaternion" && field_filter != "2")
                    throw std::invalid_argument(
                        "split-quaternion runs over F_2 (the scan over larger fields exceeds "
                        "desk scale)");
            }
            std::vector<std::string> names;
            if (suite_name == "all")
                names = suites::suite_names();
            else
                names = {suite_name};
            for (const auto& name : names) {
                suites::SuiteResult sr;
                if (name == "differential" && p_filter != 0)
                    sr = suites::differential_suite(opt, {p_filter});
                else
                    sr = suites::run_suite(name, opt);
                rep.findings[name] = sr.to_findings();
                for (const auto& cs : sr.cases)
                    rep.verdicts.emplace_back(name + ": " + cs.name, cs.pass);
            }
            return emit(rep, flags, start);
        }
        return 2;
    } catch (const cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
