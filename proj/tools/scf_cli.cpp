// Command-line surface over the simplest-cubic-field library: classification,
// lattice-point enumeration, indecomposable verification, minimal traces,
// norm extremes, Pythagoras witnesses, universal-form bounds, and the tables.
//
// Output goes to stdout (or --out) and is deterministic for fixed flags;
// progress notes go to stderr.  Rationals are serialized as exact "num/den"
// strings, never floats.  Exit codes: 0 success, 2 verification mismatch
// (counterexample JSON on stderr), 1 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include <scf/scf.hpp>

using json = nlohmann::ordered_json;
using namespace scf;

namespace {

json coords_json(const FieldElement& x) {
    return json::array({rat_string(x.coord(0)), rat_string(x.coord(1)), rat_string(x.coord(2))});
}

json gcoords_json(const IntVec3& c) {
    return json::array({c[0].get_str(), c[1].get_str(), c[2].get_str()});
}

json basis_json(const BasisDescriptor& b) {
    json j;
    switch (b.kind) {
        case BasisKind::PowerBasis:
            j["kind"] = "power";
            break;
        case BasisKind::Bp:
            j["kind"] = "Bp";
            j["p"] = b.p.get_str();
            j["k"] = b.k.get_str();
            j["l"] = b.l.get_str();
            break;
        case BasisKind::UnsupportedGeneral:
            j["kind"] = "unsupported-general";
            break;
    }
    return j;
}

json classification_json(const Classification& cl) {
    json j;
    j["a"] = cl.a.get_str();
    j["delta"] = cl.delta_disc.get_str();
    j["b"] = cl.b.get_str();
    j["c"] = cl.c.get_str();
    j["conductor"] = cl.conductor.get_str();
    j["module_index"] = cl.module_index.get_str();
    j["monogenic"] = cl.monogenic;
    j["in_exceptional_list"] = cl.in_exceptional_list;
    j["basis"] = basis_json(cl.basis);
    return j;
}

struct Output {
    std::string path;
    std::ostream& stream() {
        if (path.empty()) return std::cout;
        if (!file.is_open()) file.open(path);
        return file;
    }
    std::ofstream file;
};

Int parse_int(const std::string& s) { return Int(s); }

// "LO:HI" -> inclusive range
std::pair<Int, Int> parse_range(const std::string& s) {
    std::size_t colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("range must be LO:HI");
    return {Int(s.substr(0, colon)), Int(s.substr(colon + 1))};
}

IntVec3 parse_coords(const std::string& s) {
    IntVec3 out;
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        std::size_t comma = s.find(',', pos);
        std::string part =
            comma == std::string::npos ? s.substr(pos) : s.substr(pos, comma - pos);
        out[i] = Int(part);
        pos = comma == std::string::npos ? s.size() : comma + 1;
    }
    return out;
}

void emit_table(std::ostream& os, const std::string& format, const json& rows,
                const std::vector<std::string>& cols) {
    if (format == "markdown") {
        os << "|";
        for (const auto& c : cols) os << " " << c << " |";
        os << "\n|";
        for (std::size_t i = 0; i < cols.size(); ++i) os << "---|";
        os << "\n";
        for (const auto& row : rows) {
            os << "|";
            for (const auto& c : cols) {
                const auto& v = row.at(c);
                os << " " << (v.is_string() ? v.get<std::string>() : v.dump()) << " |";
            }
            os << "\n";
        }
    } else if (format == "csv") {
        for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < cols.size(); ++i) {
                const auto& v = row.at(cols[i]);
                os << (i ? "," : "") << (v.is_string() ? v.get<std::string>() : v.dump());
            }
            os << "\n";
        }
    } else {
        os << rows.dump(2) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic and indecomposable classification in the "
                 "simplest cubic fields"};
    app.require_subcommand(1);

    std::string a_str = "21", format = "json", out_path, coords_str, p_str = "7";
    std::string pmax_str = "103", range_str;
    int threads = 0;
    bool certify = true, no_certify = false, bruteforce = false;
    long max_a_oracle = 48;
    int parallelepiped = 2;

    auto add_common = [&](CLI::App* sub, bool with_a) {
        if (with_a) sub->add_option("--a", a_str, "family parameter a");
        sub->add_option("--format", format, "json|csv|markdown");
        sub->add_option("--out", out_path, "write output to a file");
        sub->add_option("--threads", threads, "worker threads (default SC_THREADS or hardware)");
        return sub;
    };

    auto* c_classify = add_common(app.add_subcommand("classify", "field classification"), true);
    c_classify->add_option("--a-range", range_str, "iterate a over LO:HI");
    auto* c_basis = add_common(app.add_subcommand("basis", "integral and dual basis"), true);
    auto* c_cands =
        add_common(app.add_subcommand("candidates", "lattice points of the parallelepipeds"), true);
    c_cands->add_option("--parallelepiped", parallelepiped, "1 or 2");
    c_cands->add_flag("--bruteforce", bruteforce, "use the generic enumerator");
    auto* c_indec =
        add_common(app.add_subcommand("indecomposables", "closed-form indecomposable list"), true);
    auto* c_verify =
        add_common(app.add_subcommand("verify", "oracle verification of the classification"), true);
    c_verify->add_option("--max-a-oracle", max_a_oracle, "guard for the oracle runtime");
    auto* c_mintrace = add_common(app.add_subcommand("mintrace", "certified minimal trace"), true);
    c_mintrace->add_option("--coords", coords_str, "integral coordinates c1,c2,c3")->required();
    c_mintrace->add_flag("--certify", certify, "force certified search");
    c_mintrace->add_flag("--no-certify", no_certify, "uncertified (clipped) search");
    auto* c_norms = add_common(app.add_subcommand("norms", "norm extremes"), true);
    c_norms->add_option("--a-range", range_str, "iterate family members in LO:HI");
    auto* c_pyth = add_common(app.add_subcommand("pythagoras", "Pythagoras witness"), true);
    auto* c_uqf = add_common(app.add_subcommand("uqf", "universal form rank bounds"), true);
    c_uqf->add_option("--a-range", range_str, "iterate family members in LO:HI");
    auto* c_table1 = add_common(app.add_subcommand("table1", "B_p families per prime"), false);
    c_table1->add_option("--pmax", pmax_str, "largest prime");
    auto* c_tfp = add_common(
        app.add_subcommand("table-firstpar", "first-parallelepiped indecomposables"), false);
    c_tfp->add_option("--p", p_str, "prime (7, 13, 19 or 31)");
    auto* c_a41 = add_common(app.add_subcommand("a41", "verify the complete a=41 list"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    Output out{out_path, {}};
    try {
        if (c_classify->parsed()) {
            if (!range_str.empty()) {
                auto [lo, hi] = parse_range(range_str);
                json rows = json::array();
                for (Int a = lo; a <= hi; ++a) rows.push_back(classification_json(classify(a)));
                out.stream() << rows.dump(2) << "\n";
            } else {
                Classification cl = classify(parse_int(a_str));
                out.stream() << classification_json(cl).dump(2) << "\n";
            }
        } else if (c_basis->parsed()) {
            Int a = parse_int(a_str);
            Classification cl = classify(a);
            if (cl.basis.kind == BasisKind::UnsupportedGeneral) {
                std::cerr << "unsupported module index " << cl.module_index
                          << " (not 1, 3 or a prime); classification:\n"
                          << classification_json(cl).dump(2) << "\n";
                return 2;
            }
            FieldContext ctx = FieldContext::make(a);
            DualBasis db = dual_basis(ctx, cl.basis);
            json j;
            j["a"] = a.get_str();
            j["basis"] = basis_json(cl.basis);
            auto g = integral_basis(a, cl.basis);
            j["g"] = json::array({coords_json(g[0]), coords_json(g[1]), coords_json(g[2])});
            j["phi"] = json::array(
                {coords_json(db.phi[0]), coords_json(db.phi[1]), coords_json(db.phi[2])});
            json gram = json::array(), gram_inv = json::array();
            for (int i = 0; i < 3; ++i) {
                json r1 = json::array(), r2 = json::array();
                for (int k = 0; k < 3; ++k) {
                    r1.push_back(rat_string(db.gram[i][k]));
                    r2.push_back(rat_string(db.gram_inv[i][k]));
                }
                gram.push_back(r1);
                gram_inv.push_back(r2);
            }
            j["gram"] = gram;
            j["gram_inv"] = gram_inv;
            out.stream() << j.dump(2) << "\n";
        } else if (c_cands->parsed()) {
            Int a = parse_int(a_str);
            Classification cl = classify(a);
            if (cl.basis.kind != BasisKind::Bp) {
                std::cerr << "candidate enumeration requires a B_p basis; classification:\n"
                          << classification_json(cl).dump(2) << "\n";
                return 2;
            }
            FieldContext ctx = FieldContext::make(a);
            std::ostream& os = out.stream();
            if (parallelepiped == 1) {
                for (const auto& c : first_parallelepiped_points(ctx, cl.basis)) {
                    json j;
                    j["region"] = region_name(c.region);
                    j["coords"] = coords_json(c.elem);
                    os << j.dump() << "\n";
                }
            } else if (bruteforce || cl.basis.p != 3) {
                for (const auto& x : second_parallelepiped_points_bruteforce(ctx, cl.basis)) {
                    json j;
                    j["coords"] = coords_json(x);
                    os << j.dump() << "\n";
                }
            } else {
                for (const auto& c : second_parallelepiped_points_p3(ctx)) {
                    json j;
                    j["s"] = c.s.get_str();
                    j["v"] = c.v.get_str();
                    j["r"] = c.r.get_str();
                    j["region"] = region_name(c.region);
                    j["coords"] = coords_json(c.elem);
                    os << j.dump() << "\n";
                }
            }
        } else if (c_indec->parsed()) {
            Int a = parse_int(a_str);
            if (!in_p3_family(a)) {
                std::cerr << "a is not in the p=3 family; classification:\n"
                          << classification_json(classify(a)).dump(2) << "\n";
                return 2;
            }
            FieldContext ctx = FieldContext::make(a);
            json rows = json::array();
            for (const auto& rec : generate_theorem_list(ctx)) {
                json j;
                j["family"] = family_name(rec.family);
                j["v"] = rec.param_v.get_str();
                j["r"] = rec.param_r.get_str();
                j["min_trace"] = rec.min_trace.get_str();
                j["norm"] = rec.norm_abs.get_str();
                j["gcoords"] = gcoords_json(rec.gcoords).dump();
                rows.push_back(j);
            }
            emit_table(out.stream(), format, rows,
                       {"family", "v", "r", "min_trace", "norm", "gcoords"});
        } else if (c_verify->parsed()) {
            Int a = parse_int(a_str);
            if (!in_p3_family(a)) {
                std::cerr << "a is not in the p=3 family; classification:\n"
                          << classification_json(classify(a)).dump(2) << "\n";
                return 2;
            }
            if (a > max_a_oracle) {
                std::cerr << "a exceeds --max-a-oracle (" << max_a_oracle
                          << "); raise the guard to run anyway\n";
                return 1;
            }
            std::cerr << "verifying a=" << a << " (oracle over both parallelepipeds)\n";
            FieldContext ctx = FieldContext::make(a);
            VerifyReport rep = verify_classification(ctx, threads);
            if (!rep.ok) {
                json bad = json::array();
                for (const auto& m : rep.mismatches) {
                    json j;
                    j["coords"] = coords_json(m.elem);
                    j["reason"] = m.reason;
                    bad.push_back(j);
                }
                std::cerr << bad.dump(2) << "\n";
                return 2;
            }
            out.stream() << rep.indec_count << " indecomposables verified\n";
        } else if (c_mintrace->parsed()) {
            Int a = parse_int(a_str);
            Classification cl = classify(a);
            if (cl.basis.kind == BasisKind::UnsupportedGeneral) {
                std::cerr << "unsupported basis for mintrace\n";
                return 2;
            }
            FieldContext ctx = FieldContext::make(a);
            DualBasis db = dual_basis(ctx, cl.basis);
            FieldElement x = from_integral_coords(a, cl.basis, parse_coords(coords_str));
            // certification defaults on for a <= 60; flags override either way
            bool do_certify = c_mintrace->count("--certify") ? true
                              : no_certify                   ? false
                                                             : a <= 60;
            MinTraceResult r = minimal_trace(ctx, db, x, do_certify);
            json j;
            j["a"] = a.get_str();
            j["min_trace"] = r.min_trace.get_str();
            j["certified"] = r.certified;
            j["witness_dual_coords"] = gcoords_json(r.witness.dual_coords);
            j["witness_coords"] = coords_json(r.witness.as_field_elem);
            out.stream() << j.dump(2) << "\n";
        } else if (c_norms->parsed()) {
            auto norm_json = [](const Int& a) {
                NormExtremes ne = norm_extremes(FieldContext::make(a));
                json j;
                j["a"] = a.get_str();
                j["min_nonrational"] = ne.min_nonrational.get_str();
                j["max_indec"] = ne.max_indec.get_str();
                j["argmin"] = coords_json(ne.argmin);
                j["argmax"] = coords_json(ne.argmax);
                return j;
            };
            if (!range_str.empty()) {
                // iterate only over family members inside the range
                auto [lo, hi] = parse_range(range_str);
                json rows = json::array();
                for (Int a = lo; a <= hi; ++a)
                    if (in_p3_family(a)) rows.push_back(norm_json(a));
                out.stream() << rows.dump(2) << "\n";
            } else {
                Int a = parse_int(a_str);
                if (!in_p3_family(a)) {
                    std::cerr << "a is not in the p=3 family\n";
                    return 2;
                }
                out.stream() << norm_json(a).dump(2) << "\n";
            }
        } else if (c_pyth->parsed()) {
            Int a = parse_int(a_str);
            if (!in_p3_family(a)) {
                std::cerr << "a is not in the p=3 family\n";
                return 2;
            }
            FieldContext ctx = FieldContext::make(a);
            BasisDescriptor basis = classify(a).basis;
            FieldElement gamma = build_gamma(ctx);
            std::cerr << "searching squares below gamma\n";
            auto sqs = squares_below(ctx, basis, gamma);
            auto dec = min_squares_decomposition(ctx, basis, gamma, sqs);
            auto st = decomposition_structure(ctx, basis, dec.omegas);
            json j;
            j["a"] = a.get_str();
            j["gamma"] = coords_json(gamma);
            j["squares_below"] = (json::number_unsigned_t)sqs.size();
            j["min_squares"] = dec.min_squares.get_str();
            json w = json::array();
            for (const auto& o : dec.omegas) w.push_back(coords_json(o));
            j["witness"] = w;
            j["class5_count"] = st.class5_count;
            j["rational_sum"] = rat_string(st.rational_sum);
            out.stream() << j.dump(2) << "\n";
        } else if (c_uqf->parsed()) {
            auto uqf_json = [](const Int& a) {
                UqfBounds b = uqf_bounds(FieldContext::make(a));
                json j;
                j["a"] = b.a.get_str();
                j["S_size"] = b.S_size.get_str();
                j["n_trace1"] = b.n_trace1.get_str();
                j["diag_upper"] = b.diag_upper.get_str();
                j["classical_lower"] = rat_string(b.classical_lower);
                j["nonclassical_emitted"] = b.nonclassical_emitted;
                if (b.nonclassical_emitted) {
                    // the bound is sqrt(n)/3, irrational: emit its exact square
                    j["nonclassical_lower_squared"] = rat_string(b.nonclassical_lower_sq);
                }
                return j;
            };
            if (!range_str.empty()) {
                auto [lo, hi] = parse_range(range_str);
                json rows = json::array();
                for (Int a = lo; a <= hi; ++a)
                    if (in_p3_family(a)) rows.push_back(uqf_json(a));
                out.stream() << rows.dump(2) << "\n";
            } else {
                Int a = parse_int(a_str);
                if (!in_p3_family(a)) {
                    std::cerr << "a is not in the p=3 family\n";
                    return 2;
                }
                out.stream() << uqf_json(a).dump(2) << "\n";
            }
        } else if (c_table1->parsed()) {
            Int pmax = parse_int(pmax_str);
            json rows = json::array();
            for (Int p = 5; p <= pmax; ++p) {
                if (!detail::is_prime(p)) continue;
                auto fam = family_parameters(p);
                if (!fam) continue;
                for (const auto& e : *fam) {
                    json j;
                    j["p"] = p.get_str();
                    j["a"] = e.a.get_str();
                    j["k"] = e.k.get_str();
                    j["l"] = e.l.get_str();
                    rows.push_back(j);
                }
            }
            emit_table(out.stream(), format, rows, {"p", "a", "k", "l"});
        } else if (c_tfp->parsed()) {
            Int p = parse_int(p_str);
            json rows = json::array();
            for (const auto& row : first_par_indec_table(p, threads)) {
                json j;
                j["p"] = row.p.get_str();
                j["a_residue"] = row.a_residue.get_str();
                j["a"] = row.a.get_str();
                j["k"] = row.k.get_str();
                j["l"] = row.l.get_str();
                json ind = json::array();
                for (const auto& c : row.indecomposables) ind.push_back(gcoords_json(c));
                j["indecomposables"] = ind.dump();
                rows.push_back(j);
            }
            emit_table(out.stream(), format, rows,
                       {"p", "a_residue", "a", "k", "l", "indecomposables"});
        } else if (c_a41->parsed()) {
            std::cerr << "verifying the complete a=41 classification\n";
            A41Report rep = verify_a41(threads);
            json j;
            j["candidates"] = (json::number_unsigned_t)rep.candidate_count;
            j["unit_classes"] = (json::number_unsigned_t)rep.indec_count;
            j["items"] = (json::number_unsigned_t)rep.item_count;
            json traces;
            for (const auto& [item, tr] : rep.item_traces)
                traces[std::to_string(item)] = tr.get_str();
            j["item_traces"] = traces;
            j["ok"] = rep.ok;
            if (!rep.ok) {
                json bad = json::array();
                for (const auto& m : rep.mismatches) bad.push_back(m);
                std::cerr << bad.dump(2) << "\n";
                return 2;
            }
            out.stream() << j.dump(2) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
