#include "rzeta/commands.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "rzeta/chartab.hpp"
#include "rzeta/zeta_formula.hpp"

namespace rzeta {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string join_args(const std::vector<std::string>& args) {
    std::string s = "rzeta";
    for (const auto& a : args) s += " " + a;
    return s;
}

template <typename T>
std::string join_list(const std::vector<T>& xs, const std::string& sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(xs[i]);
    }
    return s;
}

long smallest_prime_factor(long m) {
    for (long d = 2; d * d <= m; ++d)
        if (m % d == 0) return d;
    return m;
}

ZetaFormula load_formula(const std::string& path, RunReport& report) {
    report.inputs.emplace_back(path, file_digest(path));
    return ZetaFormula::from_json_text(read_file(path));
}

FiniteGroupData load_group(const std::string& path, long long cap, RunReport& report) {
    report.inputs.emplace_back(path, file_digest(path));
    MatGroupSpec spec = group_spec_from_json_text(read_file(path));
    return enumerate_group(spec, cap);
}

std::string slice_text(const DirichletSlice& slice) {
    std::string s;
    for (const auto& [n, r] : slice.coeffs) {
        if (!s.empty()) s += " ";
        s += "r_" + std::to_string(n) + "=" + r.get_str();
    }
    if (s.empty()) s = "(all zero)";
    return s;
}

std::string valuation_text(const PadicValuation& v) {
    return v.at_least ? (">=" + std::to_string(v.value)) : std::to_string(v.value);
}

MatGroupSpec sl2_spec(long modulus) {
    MatGroupSpec spec;
    spec.modulus = modulus;
    spec.dim = 2;
    spec.generators = {{1, 1, 0, 1}, {1, 0, 1, 1}};
    spec.label = "SL2(Z/" + std::to_string(modulus) + ")";
    return spec;
}

void run_verify_levels(const FiniteGroupData& g, long kernel_mod, RunReport& report) {
    SubgroupHandle kernel = reduction_kernel(g, kernel_mod);
    FiniteGroupData m_grp = subgroup_group(g, kernel);
    CharacterTable table = character_table(g);
    LevelSplit split = level_split(table, m_grp);

    long long quotient = g.order() / m_grp.order();
    long long factoring_sq = 0, new_sq = 0;
    for (long long d : split.factoring_degrees) factoring_sq += d * d;
    for (long long d : split.new_degrees) new_sq += d * d;

    report.add("factoring-degrees", factoring_sq == quotient,
               "{" + join_list(split.factoring_degrees) + "} sum of squares " +
                   std::to_string(factoring_sq) + " vs |G/M| = " + std::to_string(quotient));
    report.add("conservation", factoring_sq + new_sq == g.order(),
               std::to_string(factoring_sq) + " + " + std::to_string(new_sq) + " = " +
                   std::to_string(g.order()));
    report.add("new-degrees", true,
               "{" + join_list(split.new_degrees) + "} sum of squares " + std::to_string(new_sq));

    long p = smallest_prime_factor(g.modulus);
    FilteredMomentReport filtered = filtered_second_moment_report(table.degrees, g.order(), p, 4);
    for (const auto& row : filtered.rows) {
        std::string v = row.remainder_valuation ? std::to_string(*row.remainder_valuation)
                                                : "infinite";
        report.add("filtered-moment-j" + std::to_string(row.j), row.ok,
                   "retained " + std::to_string(row.retained) + ", remainder " +
                       std::to_string(row.remainder) + ", v_" + std::to_string(p) + " = " + v +
                       " (needs >= " + std::to_string(2 * row.j) + ")");
    }
    report.add("order-valuation", true,
               "v_" + std::to_string(p) + "(|G|) = " + std::to_string(filtered.order_valuation));
}

} // namespace

RunReport run_command(const std::vector<std::string>& args) {
    RunReport report;
    report.command = join_args(args);

    CLI::App app{"exact arithmetic for representation zeta formulas and finite matrix groups"};
    app.name("rzeta");
    app.fallthrough(true);
    app.require_subcommand(1);

    std::string formula_path, group_path, coeffs_path, json_out, table_out;
    long e_value = 2;
    long precision = 10;
    int stages = 10;
    long long bound = 50;
    long long cap = 200000;
    long kernel_mod = 0;
    int deg_num = 0, deg_den = 0;
    long mech_p = 3;
    int mech_kmax = 2;

    app.add_option("--json", json_out, "write the JSON report to this path");

    auto* zeta_cmd = app.add_subcommand("zeta", "rational-form zeta formula operations");
    zeta_cmd->fallthrough(true);
    zeta_cmd->require_subcommand(1);
    auto* zeta_eval = zeta_cmd->add_subcommand("eval", "exact value at s = -e");
    zeta_eval->add_option("--formula", formula_path, "formula JSON file")->required();
    zeta_eval->add_option("-e", e_value, "negative integer evaluation point (default 2)");
    auto* zeta_coeffs = zeta_cmd->add_subcommand("coeffs", "Dirichlet coefficients up to a bound");
    zeta_coeffs->add_option("--formula", formula_path, "formula JSON file")->required();
    zeta_coeffs->add_option("--bound", bound, "largest index to expand (default 50)");
    auto* zeta_padic = zeta_cmd->add_subcommand("padic", "p-adic truncation trace at s = -e");
    zeta_padic->add_option("--formula", formula_path, "formula JSON file")->required();
    zeta_padic->add_option("-e", e_value, "negative integer evaluation point (default 2)");
    zeta_padic->add_option("--precision", precision, "p-adic working precision (default 10)");
    zeta_padic->add_option("--stages", stages, "number of truncation stages (default 10)");
    auto* zeta_vanish = zeta_cmd->add_subcommand("vanish", "value and zero test at s = -2");
    zeta_vanish->add_option("--formula", formula_path, "formula JSON file")->required();
    auto* zeta_fit = zeta_cmd->add_subcommand("fit", "fit a rational form to coefficients");
    zeta_fit->add_option("--coeffs", coeffs_path, "JSON file {\"p\":...,\"coeffs\":[...]}")->required();
    zeta_fit->add_option("--deg-num", deg_num, "numerator degree bound")->required();
    zeta_fit->add_option("--deg-den", deg_den, "denominator degree bound")->required();

    auto* group_cmd = app.add_subcommand("group", "finite matrix group pipelines");
    group_cmd->fallthrough(true);
    group_cmd->require_subcommand(1);
    auto* group_enum = group_cmd->add_subcommand("enumerate", "breadth-first closure");
    group_enum->add_option("--group", group_path, "group spec JSON file")->required();
    group_enum->add_option("--cap", cap, "element cap (default 200000)");
    auto* group_classes = group_cmd->add_subcommand("classes", "conjugacy classes");
    group_classes->add_option("--group", group_path, "group spec JSON file")->required();
    group_classes->add_option("--cap", cap, "element cap (default 200000)");
    auto* group_chartab = group_cmd->add_subcommand("chartab", "character table");
    group_chartab->add_option("--group", group_path, "group spec JSON file")->required();
    group_chartab->add_option("--cap", cap, "element cap (default 200000)");
    group_chartab->add_option("--table", table_out, "write the table export JSON to this path");
    auto* group_wedderburn = group_cmd->add_subcommand("wedderburn", "sum of squared degrees vs order");
    group_wedderburn->add_option("--group", group_path, "group spec JSON file")->required();
    group_wedderburn->add_option("--cap", cap, "element cap (default 200000)");

    auto* verify_cmd = app.add_subcommand("verify", "full verification pipelines");
    verify_cmd->fallthrough(true);
    verify_cmd->require_subcommand(1);
    auto* verify_clifford = verify_cmd->add_subcommand("clifford", "second-moment identity over a congruence kernel");
    verify_clifford->add_option("--group", group_path, "group spec JSON file")->required();
    verify_clifford->add_option("--kernel-mod", kernel_mod, "reduction modulus for the kernel")->required();
    verify_clifford->add_option("--cap", cap, "element cap (default 200000)");
    auto* verify_levels = verify_cmd->add_subcommand("levels", "level split and filtered second moments");
    verify_levels->add_option("--group", group_path, "group spec JSON file")->required();
    verify_levels->add_option("--kernel-mod", kernel_mod, "reduction modulus for the kernel")->required();
    verify_levels->add_option("--cap", cap, "element cap (default 200000)");
    auto* verify_mechanism = verify_cmd->add_subcommand("mechanism", "valuation growth along SL2(Z/p^k)");
    verify_mechanism->add_option("--p", mech_p, "odd prime (default 3)");
    verify_mechanism->add_option("--kmax", mech_kmax, "largest level (default 2)");

    std::vector<char*> argv;
    std::string prog = "rzeta";
    argv.push_back(prog.data());
    std::vector<std::string> owned = args;
    for (auto& a : owned) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            report.add("help", true, app.help());
            return report;
        }
        report.add("usage", false, e.what());
        report.exit_code = 2;
        return report;
    }

    try {
        if (zeta_eval->parsed()) {
            ZetaFormula z = load_formula(formula_path, report);
            QQ value = z.value_at_negative(e_value);
            report.add("evaluate", true,
                       "value at -" + std::to_string(e_value) + " = " + value.get_str());
        } else if (zeta_coeffs->parsed()) {
            ZetaFormula z = load_formula(formula_path, report);
            DirichletSlice slice = z.coefficients(bound);
            report.add("coefficients", true, slice_text(slice));
            report.add("flags", true,
                       std::string("integrality ") + (slice.integrality_ok ? "ok" : "violated") +
                           ", nonnegativity " + (slice.nonnegativity_ok ? "ok" : "violated"));
            std::vector<ZZ> weights;
            for (const auto& t : z.terms()) weights.push_back(t.weight);
            SupportReport support = support_check(slice, weights, z.prime());
            report.add("support", support.pass,
                       support.pass ? "every index has the form m * p^r"
                                    : "violations at " + join_list(support.violations));
        } else if (zeta_padic->parsed()) {
            ZetaFormula z = load_formula(formula_path, report);
            TruncationTrace trace = z.padic_truncation(e_value, stages, precision);
            for (const auto& st : trace.stages) {
                std::string residue = st.partial_padic
                    ? ", residue " + st.partial_padic->residue().get_str() + " mod " +
                          std::to_string(z.prime()) + "^" + std::to_string(precision)
                    : "";
                report.add("stage-" + std::to_string(st.stage), true,
                           "partial sum " + st.partial_sum.get_str() + residue +
                               ", diff valuation " + valuation_text(st.difference_valuation));
            }
            report.add("valuations-nondecreasing", trace.valuations_nondecreasing,
                       "exact value " + trace.exact_value.get_str());
            const auto& last = trace.stages.back().difference_valuation;
            report.add("reaches-precision", last.at_least,
                       "final stage valuation " + valuation_text(last) + ", target " +
                           std::to_string(precision));
        } else if (zeta_vanish->parsed()) {
            ZetaFormula z = load_formula(formula_path, report);
            VanishingCheck check = z.vanishing_check();
            report.add("vanishes-at-minus-2", check.vanishes,
                       "value " + check.value_at_minus2.get_str());
        } else if (zeta_fit->parsed()) {
            report.inputs.emplace_back(coeffs_path, file_digest(coeffs_path));
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(read_file(coeffs_path));
            } catch (const std::exception& ex) {
                throw InputError(std::string("coefficient JSON parse error: ") + ex.what());
            }
            if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
                throw InputError("coefficient file needs a \"coeffs\" array");
            std::vector<QQ> coeffs;
            for (const auto& v : j["coeffs"]) {
                if (v.is_string()) coeffs.push_back(parse_rational(v.get<std::string>()));
                else if (v.is_number_integer()) coeffs.push_back(QQ(static_cast<long>(v.get<long long>())));
                else throw InputError("coefficients must be decimal strings or integers");
            }
            std::optional<RationalFunction> fit = pade_fit(coeffs, deg_num, deg_den);
            if (!fit) {
                report.add("pade-fit", false, "no rational function of the requested degrees matches");
            } else {
                long p = j.contains("p") && j["p"].is_number_integer() ? j["p"].get<long>() : 0;
                std::string formula_text;
                if (p != 0) {
                    ZetaFormula candidate(p, {{ZZ(1), *fit}});
                    formula_text = candidate.to_json_text();
                    formula_text.pop_back(); // single-line detail
                    for (auto& ch : formula_text)
                        if (ch == '\n') ch = ' ';
                } else {
                    auto poly_text = [](const Polynomial& poly) {
                        std::string s = "[";
                        for (int i = 0; i <= poly.degree(); ++i)
                            s += (i ? "," : "") + poly.coeff(i).get_str();
                        return s + "]";
                    };
                    formula_text = "num " + poly_text(fit->numerator()) + " den " +
                                   poly_text(fit->denominator());
                }
                report.add("pade-fit", true, "conjectural fit: " + formula_text);
            }
        } else if (group_enum->parsed()) {
            FiniteGroupData g = load_group(group_path, cap, report);
            report.add("enumerate", true,
                       (g.label.empty() ? std::string("group") : g.label) + " has order " +
                           std::to_string(g.order()));
        } else if (group_classes->parsed()) {
            FiniteGroupData g = load_group(group_path, cap, report);
            std::vector<long long> sizes;
            long long total = 0;
            for (const auto& c : g.classes) {
                sizes.push_back(static_cast<long long>(c.members.size()));
                total += static_cast<long long>(c.members.size());
            }
            report.add("classes", true,
                       std::to_string(g.classes.size()) + " classes, sizes " + join_list(sizes));
            report.add("class-equation", total == g.order(),
                       std::to_string(total) + " = " + std::to_string(g.order()));
        } else if (group_chartab->parsed()) {
            FiniteGroupData g = load_group(group_path, cap, report);
            CharacterTable t = character_table(g);
            report.add("character-table", true,
                       "field prime " + std::to_string(t.modulus) + ", degrees " +
                           join_list(t.degrees));
            WedderburnCheck w = wedderburn_check(t);
            report.add("wedderburn", w.equals_order,
                       std::to_string(w.sum_of_squares) + " = " + std::to_string(g.order()));
            if (!table_out.empty()) {
                std::ofstream out(table_out, std::ios::binary);
                if (!out) throw InputError("cannot write file: " + table_out);
                out << character_table_to_json_text(t, g.label);
            }
        } else if (group_wedderburn->parsed()) {
            FiniteGroupData g = load_group(group_path, cap, report);
            CharacterTable t = character_table(g);
            WedderburnCheck w = wedderburn_check(t);
            report.add("wedderburn", w.equals_order,
                       std::to_string(w.sum_of_squares) + " = " + std::to_string(g.order()));
        } else if (verify_clifford->parsed()) {
            FiniteGroupData g = load_group(group_path, cap, report);
            SubgroupHandle kernel = reduction_kernel(g, kernel_mod);
            FiniteGroupData n_grp = subgroup_group(g, kernel);
            long long l = character_field_modulus(g.exponent, g.order());
            CharacterTable t_n = character_table(n_grp, l);
            bool all_equal = true;
            for (int theta = 0; theta < t_n.num_characters(); ++theta) {
                CliffordResult r = clifford_second_moment(g, n_grp, t_n, theta);
                if (!r.equal) all_equal = false;
                report.add("theta-" + std::to_string(theta), r.equal,
                           "second moment " + r.second_moment.get_str() + ", |K:N| = " +
                               r.stabilizer_over_base.get_str() + ", |G:K| = " +
                               std::to_string(r.stabilizer_index));
            }
            report.add("clifford-identity", all_equal,
                       std::to_string(t_n.num_characters()) + " characters of the kernel checked");
        } else if (verify_levels->parsed()) {
            FiniteGroupData g = load_group(group_path, cap, report);
            run_verify_levels(g, kernel_mod, report);
        } else if (verify_mechanism->parsed()) {
            if (!is_prime(mech_p) || mech_p < 3) throw InputError("--p must be an odd prime");
            if (mech_kmax < 1) throw InputError("--kmax must be >= 1");
            long modulus = 1;
            for (int k = 1; k <= mech_kmax; ++k) {
                modulus *= mech_p;
                FiniteGroupData g = enumerate_group(sl2_spec(modulus), cap);
                CharacterTable t = character_table(g);
                WedderburnCheck w = wedderburn_check(t);
                report.add("wedderburn-k" + std::to_string(k), w.equals_order,
                           std::to_string(w.sum_of_squares) + " = " + std::to_string(g.order()));
                long v = valuation(ZZ(static_cast<long>(g.order())), mech_p);
                report.add("order-valuation-k" + std::to_string(k), v == 3 * k - 2,
                           "v_" + std::to_string(mech_p) + "(" + std::to_string(g.order()) +
                               ") = " + std::to_string(v) + ", expected " + std::to_string(3 * k - 2));
                FilteredMomentReport filtered =
                    filtered_second_moment_report(t.degrees, g.order(), mech_p, 4);
                report.add("filtered-moments-k" + std::to_string(k), filtered.all_ok,
                           "remainders divisible by p^2j for j <= 4");
            }
        }
    } catch (const InputError& e) {
        report.add("input", false, e.what());
        report.exit_code = 3;
    } catch (const Error& e) {
        report.add("input", false, e.what());
        report.exit_code = 3;
    } catch (const std::exception& e) {
        report.add("input", false, e.what());
        report.exit_code = 3;
    }

    if (!json_out.empty() && report.exit_code != 2) {
        std::ofstream out(json_out, std::ios::binary);
        if (out) out << report.to_json_text();
    }
    return report;
}

} // namespace rzeta
