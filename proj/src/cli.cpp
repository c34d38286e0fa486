#include "orbsieve/cli.hpp"

#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "orbsieve/apollonian.hpp"
#include "orbsieve/dt3m.hpp"
#include "orbsieve/kernels.hpp"
#include "orbsieve/sieve.hpp"
#include "orbsieve/spectral.hpp"
#include "orbsieve/walk.hpp"

namespace orbsieve::cli {

namespace fs = std::filesystem;
using njson = nlohmann::ordered_json;

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected unsigned integer, got '" + s + "'");
    }
}

njson rational_json(const Rational& r) {
    return njson{{"exact", r.to_string()}, {"value", r.to_double()}};
}

njson meta_json(const RunConfig& cfg) {
    njson meta;
    meta["tool"] = "orbsieve";
    meta["version"] = kVersion;
    meta["subcommand"] = cfg.subcommand;
    meta["seed"] = cfg.seed;
    njson conf = njson::object();
    for (const auto& [k, v] : cfg.raw) {
        // execution details stay out of the echo so identical (config, seed)
        // gives byte-identical outputs across runs, paths, and worker counts
        if (k == "out" || k == "workers" || k == "resume") continue;
        conf[k] = v;
    }
    meta["config"] = conf;
    return meta;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

// Comment header so plottable artifacts carry the config that produced them.
std::string csv_meta_header(const RunConfig& cfg) {
    std::string h = "# orbsieve " + std::string(kVersion) + " subcommand=" + cfg.subcommand +
                    " seed=" + std::to_string(cfg.seed) + "\n# config:";
    for (const auto& [k, v] : cfg.raw) {
        if (k == "out" || k == "workers" || k == "resume" || k == "seed" || k == "subcommand") continue;
        h += " " + k + "=" + v;
    }
    h += "\n";
    return h;
}

void write_json_file(const fs::path& path, const njson& j) { write_text(path, j.dump(2) + "\n"); }

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    if (hi < 2 || hi < lo) return out;
    for (auto p : primes_below(static_cast<std::uint32_t>(hi + 1)))
        if (p >= lo) out.push_back(p);
    return out;
}

// ---- subcommands ----

int run_apollonian(const RunConfig& cfg, njson& report) {
    apollonian::DescartesQuadruple root;
    for (int i = 0; i < 4; ++i) root.c[i] = cfg.root[i];
    apollonian::Packing packing = apollonian::enumerate_packing(root, cfg.bound);

    std::ostringstream snap;
    apollonian::write_packing(packing, snap);
    write_text(fs::path(cfg.out_dir) / "packing.txt", snap.str());

    report["packing"] = {
        {"quadruples", packing.quadruples.size()},
        {"circles", packing.curvatures.size()},
        {"distinct_curvatures", packing.distinct_curvatures().size()},
        {"min_curvature", packing.curvatures.front().to_string()},
        {"max_curvature", packing.curvatures.back().to_string()},
    };

    int status = kExitOk;
    if (cfg.z >= 2) {
        auto seq = sieve::SieveSequence::from_values(packing.curvatures);
        auto primes = primes_in_range(2, cfg.z - 1);
        auto sift = sieve::legendre_sift(seq, primes, cfg.z);
        report["curvature_sieve"] = {
            {"z", cfg.z},
            {"total_mass", rational_json(seq.total_mass())},
            {"zero_mass", rational_json(seq.zero_mass())},
            {"sifted_inclusion_exclusion", rational_json(sift.inclusion_exclusion)},
            {"sifted_direct", rational_json(sift.direct)},
            {"routes_agree", sift.routes_agree},
            {"budget_exceeded", sift.budget_exceeded},
        };
        if (sift.budget_exceeded) status = kExitIncomplete;
    }
    return status;
}

int run_strongapprox(const RunConfig& cfg, njson& report) {
    auto preset = cfg.resolve_preset();
    auto primes = primes_in_range(cfg.prime_min, cfg.prime_max);
    njson rows = njson::array();
    njson failures = njson::array();
    bool incomplete = false;
    for (auto p : primes) {
        auto rep = orbits::strong_approx_check(preset, BigInt::from_u64(p), cfg.enum_cap);
        njson row;
        row["p"] = p;
        row["cap_exceeded"] = rep.cap_exceeded;
        if (!rep.cap_exceeded) {
            row["image_size"] = rep.image_size.to_string();
            if (rep.ambient_size) row["ambient_size"] = rep.ambient_size->to_string();
            if (rep.surjective) {
                row["surjective"] = *rep.surjective;
                if (!*rep.surjective) failures.push_back(p);
            }
        } else {
            incomplete = true;
        }
        rows.push_back(std::move(row));
    }
    report["primes_tested"] = primes.size();
    report["rows"] = rows;
    report["non_surjective_primes"] = failures;
    return incomplete ? kExitIncomplete : kExitOk;
}

int run_spectral(const RunConfig& cfg, njson& report) {
    auto preset = cfg.resolve_preset();
    auto primes = primes_in_range(cfg.prime_min, cfg.prime_max);
    njson rows = njson::array();
    std::vector<spectral::SpectralCsvRow> csv_rows;
    bool incomplete = false;
    for (auto p : primes) {
        auto built = orbits::generate_finite_image(preset, BigInt::from_u64(p), cfg.enum_cap);
        njson row;
        row["d"] = p;
        if (built.cap_exceeded) {
            row["cap_exceeded"] = true;
            incomplete = true;
            rows.push_back(std::move(row));
            continue;
        }
        auto graph = spectral::CayleyGraph::from_table(*built.table);
        auto rep = spectral::spectral_report_auto(graph);
        if (!rep.converged) incomplete = true;
        std::size_t diam = spectral::graph_diameter(graph);
        std::size_t girth = spectral::girth_lower_bound(graph);
        row["group_size"] = rep.group_size;
        row["rho0"] = rep.rho0;
        row["method"] = rep.used_dense ? "dense" : "iteration";
        row["converged"] = rep.converged;
        row["iterations"] = rep.iterations;
        row["diameter"] = diam;
        row["girth_lower_bound"] = girth;
        rows.push_back(std::move(row));
        csv_rows.push_back({BigInt::from_u64(p), rep.group_size, rep.rho0, diam, girth});
    }
    std::ostringstream csv;
    csv << csv_meta_header(cfg);
    spectral::write_spectral_csv(csv, csv_rows);
    write_text(fs::path(cfg.out_dir) / "spectral.csv", csv.str());
    report["rows"] = rows;
    report["markov_kernel"] = kernels::selected_markov_kernel_name();
    return incomplete ? kExitIncomplete : kExitOk;
}

sieve::SieveSequence load_sieve_input(const RunConfig& cfg) {
    if (!cfg.input_path.empty()) {
        std::ifstream in(cfg.input_path);
        if (!in) throw ConfigError("input: cannot open " + cfg.input_path);
        std::vector<BigInt> values;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            for (const auto& tok : split_ws(line)) {
                try {
                    values.push_back(BigInt::from_string(tok));
                } catch (const std::exception&) {
                    throw ConfigError(cfg.input_path + ":" + std::to_string(lineno) +
                                      ": expected integer, got '" + tok + "'");
                }
            }
        }
        return sieve::SieveSequence::from_values(values);
    }
    return sieve::SieveSequence::counting_range(cfg.range.first, cfg.range.second);
}

int run_sieve(const RunConfig& cfg, njson& report) {
    auto seq = load_sieve_input(cfg);
    auto primes = primes_in_range(2, cfg.z - 1);
    auto sift = sieve::legendre_sift(seq, primes, cfg.z);

    report["items"] = seq.items().size();
    report["zero_items"] = seq.zero_items().size();
    report["total_mass"] = rational_json(seq.total_mass());
    report["zero_mass"] = rational_json(seq.zero_mass());
    report["z"] = cfg.z;
    report["sifted_count"] = rational_json(sift.direct);
    report["sifted_inclusion_exclusion"] = rational_json(sift.inclusion_exclusion);
    report["routes_agree"] = sift.routes_agree;
    report["budget_exceeded"] = sift.budget_exceeded;

    // observed local fractions g(p) = S_p / S and, with enough primes, the slope fit
    njson gp = njson::array();
    std::vector<std::pair<std::uint64_t, Rational>> densities;
    for (auto p : primes) {
        Rational sp = sieve::congruence_sum(seq, BigInt::from_u64(p));
        Rational g = seq.total_mass().is_zero() ? Rational(0) : sp / seq.total_mass();
        densities.emplace_back(p, g);
        gp.push_back(njson{{"p", p}, {"g", rational_json(g)}});
    }
    report["congruence_fractions"] = gp;
    if (densities.size() >= 5) {
        auto fit = sieve::dimension_estimate(densities);
        report["dimension_fit"] = {{"kappa", fit.kappa},
                                   {"intercept", fit.intercept},
                                   {"rms_residual", fit.rms_residual},
                                   {"points", fit.points}};
    }

    // large-sieve mass over the observed local fractions
    std::vector<sieve::LocalDensity> ls;
    for (const auto& [p, g] : densities) {
        sieve::LocalDensity d;
        d.prime = p;
        d.density = g;
        ls.push_back(std::move(d));
    }
    auto mass = sieve::large_sieve_mass(ls, cfg.z, seq.total_mass());
    if (mass.finite) {
        report["large_sieve"] = {{"h", rational_json(mass.h)},
                                 {"sifted_upper_bound", rational_json(mass.sifted_upper_bound)}};
    } else {
        report["large_sieve"] = {{"empty_mod_prime", mass.empty_mod_prime}};
    }
    return sift.budget_exceeded ? kExitIncomplete : kExitOk;
}

int run_saturation(const RunConfig& cfg, njson& report) {
    auto preset = cfg.resolve_preset();
    Polynomial f = cfg.resolve_polynomial(preset.dim);
    std::vector<BigInt> x0 = cfg.x0;

    std::optional<orbits::WalkEnsemble> resumed;
    if (!cfg.resume_path.empty()) {
        std::ifstream in(cfg.resume_path);
        if (!in) throw ConfigError("resume: cannot open " + cfg.resume_path);
        resumed = orbits::read_walk_snapshot(in);
        if (resumed->preset_hash != preset.hash64())
            throw ConfigError("resume: snapshot belongs to a different preset");
    }

    njson per_k = njson::array();
    std::ostringstream csv;
    csv << csv_meta_header(cfg) << "k,r,lower_fraction,upper_fraction\n";
    bool incomplete = false;
    for (std::uint32_t k : cfg.k_grid) {
        orbits::WalkEnsemble ensemble;
        if (resumed) {
            orbits::extend_walk(preset, *resumed, k, cfg.workers);
            ensemble = *resumed;
        } else {
            ensemble = orbits::sample_walk(preset, k, cfg.samples, cfg.seed, cfg.workers);
        }
        {
            std::ostringstream snap;
            orbits::write_walk_snapshot(ensemble, snap);
            write_text(fs::path(cfg.out_dir) / ("walk_k" + std::to_string(k) + ".snapshot"), snap.str());
        }
        auto stats = sieve::almost_prime_measure(ensemble, x0, f, cfg.r_max, cfg.effort, cfg.workers);
        if (!stats.unfactored_fraction.is_zero()) incomplete = true;

        njson fractions = njson::array();
        for (std::uint32_t r = 0; r <= cfg.r_max; ++r) {
            fractions.push_back(njson{{"r", r},
                                      {"lower", rational_json(stats.lower_fraction[r])},
                                      {"upper", rational_json(stats.upper_fraction[r])}});
            csv << k << ',' << r << ',' << stats.lower_fraction[r].to_double() << ','
                << stats.upper_fraction[r].to_double() << '\n';
        }
        // empirical growth rate of |f(gamma x0)| ~ lambda^k along the walk
        double log_sum = 0.0;
        std::size_t log_count = 0;
        for (const auto& g : ensemble.samples) {
            BigInt v = orbits::orbit_value(g, x0, f);
            if (v.is_zero()) continue;
            log_sum += static_cast<double>(v.abs().bit_length()) * std::log(2.0);
            ++log_count;
        }
        njson entry;
        entry["k"] = k;
        entry["samples"] = stats.samples;
        entry["zero_fraction"] = rational_json(stats.zero_fraction);
        entry["unfactored_fraction"] = rational_json(stats.unfactored_fraction);
        if (log_count && k > 0)
            entry["value_growth_lambda"] =
                std::exp(log_sum / static_cast<double>(log_count) / static_cast<double>(k));
        entry["fractions"] = fractions;
        if (cfg.z >= 2) {
            Rational sf = sieve::sifted_fraction(ensemble, x0, f, cfg.z);
            entry["sifted_fraction"] = rational_json(sf);
            entry["sifted_times_log_z_sq"] =
                sf.to_double() * std::pow(std::log(static_cast<double>(cfg.z)), 2.0);
        }
        per_k.push_back(std::move(entry));
    }
    write_text(fs::path(cfg.out_dir) / "saturation.csv", csv.str());
    report["per_k"] = per_k;
    return incomplete ? kExitIncomplete : kExitOk;
}

int run_dt3m(const RunConfig& cfg, njson& report) {
    const std::size_t genus = cfg.raw.count("genus") ? parse_u64(cfg.raw.at("genus"), "genus") : 1;
    if (genus < 1 || genus > 2) throw ConfigError("genus: must be 1 or 2");
    auto preset = genus == 1 ? orbits::sl2z_preset() : orbits::sp4_transvections_preset();
    auto small_primes = primes_in_range(2, cfg.z >= 2 ? cfg.z - 1 : 0);

    std::ostringstream csv;
    csv << csv_meta_header(cfg) << "k,sample,finite,torsion_order,omega_order,small_prime_divisors\n";
    njson per_k = njson::array();
    bool incomplete = false;
    for (std::uint32_t k : cfg.k_grid) {
        auto walk = orbits::sample_walk(preset, k, cfg.samples, cfg.seed, cfg.workers);
        std::size_t infinite = 0, unfactored = 0;
        double omega_sum = 0;
        std::size_t omega_count = 0;
        for (std::size_t i = 0; i < walk.samples.size(); ++i) {
            dt3m::HeegaardDatum datum{genus, walk.samples[i]};
            auto h = dt3m::homology_group(datum);
            std::string omega_str = "inf";
            std::size_t small_divs = 0;
            if (h.finite()) {
                auto ov = omega(h.order, cfg.effort);
                if (ov.kind == OmegaKind::Unknown) {
                    ++unfactored;
                    omega_str = ">=" + std::to_string(ov.lower_bound);
                } else {
                    omega_str = std::to_string(ov.count);
                    omega_sum += static_cast<double>(ov.count);
                    ++omega_count;
                }
                for (auto p : small_primes)
                    if (!h.order.is_zero() && h.order.mod_u32(static_cast<std::uint32_t>(p)) == 0) ++small_divs;
            } else {
                ++infinite;
            }
            csv << k << ',' << i << ',' << (h.finite() ? 1 : 0) << ',' << h.order.to_string() << ','
                << omega_str << ',' << small_divs << '\n';
        }
        if (unfactored) incomplete = true;
        njson entry;
        entry["k"] = k;
        entry["samples"] = walk.samples.size();
        entry["infinite_fraction"] =
            rational_json(Rational(static_cast<std::int64_t>(infinite)) /
                          Rational(static_cast<std::int64_t>(walk.samples.size())));
        entry["unfactored"] = unfactored;
        if (omega_count) entry["mean_omega_order"] = omega_sum / static_cast<double>(omega_count);
        per_k.push_back(std::move(entry));
    }
    write_text(fs::path(cfg.out_dir) / "dt3m.csv", csv.str());

    // exact local densities and the dimension-1 fit
    njson dens = njson::array();
    std::vector<std::pair<std::uint64_t, Rational>> fit_points;
    for (auto p : small_primes) {
        auto d = dt3m::omega_density(genus, static_cast<std::uint32_t>(p), cfg.enum_cap, 20000, cfg.seed);
        njson row;
        row["p"] = p;
        row["exact"] = d.exact;
        if (d.exact) {
            row["density"] = rational_json(d.density);
            fit_points.emplace_back(p, d.density);
        } else {
            row["estimate"] = d.estimate;
            row["ci_halfwidth"] = d.ci_halfwidth;
        }
        dens.push_back(std::move(row));
    }
    report["omega_densities"] = dens;
    if (fit_points.size() >= 5) {
        auto fit = sieve::dimension_estimate(fit_points);
        report["dimension_fit"] = {{"kappa", fit.kappa}, {"points", fit.points}};
    }
    report["per_k"] = per_k;
    return incomplete ? kExitIncomplete : kExitOk;
}

}  // namespace

orbits::GroupPreset RunConfig::resolve_preset() const {
    if (preset_name == "custom") {
        if (!custom_preset) throw ConfigError("preset: custom requires ambient and generator lines");
        custom_preset->validate();
        return *custom_preset;
    }
    return orbits::preset_by_name(preset_name);
}

Polynomial RunConfig::resolve_polynomial(std::size_t nvars) const {
    auto toks = split_ws(f_spec);
    if (toks.empty()) throw ConfigError("f: empty specification");
    if (toks[0] == "product") return Polynomial::coordinate_product(nvars);
    if (toks[0] == "coordinate") {
        if (toks.size() != 2) throw ConfigError("f: coordinate needs an index");
        std::uint64_t idx = parse_u64(toks[1], "f");
        if (idx >= nvars) throw ConfigError("f: coordinate index out of range");
        return Polynomial::coordinate(nvars, idx);
    }
    if (toks[0] == "constant") {
        if (toks.size() != 2) throw ConfigError("f: constant needs a value");
        return Polynomial::constant(nvars, BigInt::from_string(toks[1]));
    }
    if (toks[0] == "monomials") {
        // f = monomials <coeff>:<e1>,...,<en> ...
        std::vector<Polynomial::Term> terms;
        for (std::size_t i = 1; i < toks.size(); ++i) {
            auto colon = toks[i].find(':');
            if (colon == std::string::npos) throw ConfigError("f: monomial needs coeff:exponents");
            Polynomial::Term t;
            t.coeff = BigInt::from_string(toks[i].substr(0, colon));
            std::string exps = toks[i].substr(colon + 1);
            std::istringstream in(exps);
            std::string e;
            while (std::getline(in, e, ','))
                t.exponents.push_back(static_cast<unsigned>(parse_u64(e, "f")));
            if (t.exponents.size() != nvars) throw ConfigError("f: monomial arity mismatch");
            terms.push_back(std::move(t));
        }
        return Polynomial(nvars, std::move(terms));
    }
    throw ConfigError("f: unknown form '" + toks[0] + "'");
}

void RunConfig::validate() const {
    static const std::vector<std::string> known = {"apollonian", "strongapprox", "spectral",
                                                   "sieve", "saturation", "dt3m"};
    if (std::find(known.begin(), known.end(), subcommand) == known.end())
        throw ConfigError("subcommand: unknown or missing ('" + subcommand + "')");
    if (workers == 0) throw ConfigError("workers: must be >= 1");
    if (subcommand == "apollonian") {
        if (root.size() != 4) throw ConfigError("root: need exactly four curvatures");
        apollonian::DescartesQuadruple q;
        for (int i = 0; i < 4; ++i) q.c[i] = root[i];
        if (!apollonian::descartes_form(q).is_zero())
            throw ConfigError("root: quadruple fails the Descartes relation");
        for (const auto& c : root)
            if (c > bound) throw ConfigError("bound: below a root curvature");
    }
    if (subcommand == "sieve") {
        if (cfg_needs_input()) throw ConfigError("sieve: needs input = <path> or range = <lo> <hi>");
        if (z < 2) throw ConfigError("z: required (>= 2)");
    }
    if (subcommand == "saturation") {
        auto preset = resolve_preset();
        if (x0.empty()) throw ConfigError("x0: required");
        if (x0.size() != preset.dim) throw ConfigError("x0: dimension mismatch with the preset");
        if (k_grid.empty()) throw ConfigError("k: required");
        if (samples == 0) throw ConfigError("n: must be >= 1");
        resolve_polynomial(preset.dim);
    }
    if (subcommand == "dt3m") {
        if (k_grid.empty()) throw ConfigError("k: required");
        if (samples == 0) throw ConfigError("n: must be >= 1");
    }
    if (subcommand == "strongapprox" || subcommand == "spectral") resolve_preset();
}

bool RunConfig::cfg_needs_input() const { return input_path.empty() && range.second < range.first; }

void apply_config_line(RunConfig& cfg, const std::string& raw_line, const std::string& where) {
    std::string line = raw_line;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto eq = line.find('=');
    if (line.find_first_not_of(" \t") == std::string::npos) return;  // blank
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(where + ": expected 'key = value'");

    auto toks = split_ws(value);
    try {
        if (key == "subcommand") cfg.subcommand = value;
        else if (key == "preset") cfg.preset_name = value;
        else if (key == "ambient") {
            if (!cfg.custom_preset) cfg.custom_preset.emplace();
            cfg.custom_preset->name = "custom";
            if (toks.size() != 2) throw ConfigError(where + ": ambient needs '<kind> <dim>'");
            if (toks[0] == "SL") cfg.custom_preset->kind = orbits::AmbientKind::SpecialLinear;
            else if (toks[0] == "Sp") cfg.custom_preset->kind = orbits::AmbientKind::Symplectic;
            else if (toks[0] == "OQ") cfg.custom_preset->kind = orbits::AmbientKind::OrthogonalForm;
            else throw ConfigError(where + ": ambient kind must be SL, Sp, or OQ");
            cfg.custom_preset->dim = parse_u64(toks[1], where);
        } else if (key == "generator") {
            if (!cfg.custom_preset) cfg.custom_preset.emplace();
            cfg.custom_preset->name = "custom";
            cfg.custom_preset->generators.push_back(parse_matrix_literal(value));
        } else if (key == "gram") {
            if (!cfg.custom_preset) cfg.custom_preset.emplace();
            cfg.custom_preset->gram = parse_matrix_literal(value);
        } else if (key == "sigma") {
            if (!cfg.custom_preset) cfg.custom_preset.emplace();
            for (const auto& t : toks) cfg.custom_preset->exceptional_primes.push_back(parse_u64(t, where));
        } else if (key == "f") cfg.f_spec = value;
        else if (key == "x0") {
            cfg.x0.clear();
            for (const auto& t : toks) cfg.x0.push_back(BigInt::from_string(t));
        } else if (key == "root") {
            cfg.root.clear();
            for (const auto& t : toks) cfg.root.push_back(BigInt::from_string(t));
        } else if (key == "bound") cfg.bound = BigInt::from_string(value);
        else if (key == "pmin") cfg.prime_min = parse_u64(value, where);
        else if (key == "pmax") cfg.prime_max = parse_u64(value, where);
        else if (key == "z") cfg.z = parse_u64(value, where);
        else if (key == "k") {
            cfg.k_grid.clear();
            for (const auto& t : toks) cfg.k_grid.push_back(static_cast<std::uint32_t>(parse_u64(t, where)));
        } else if (key == "n") cfg.samples = static_cast<std::uint32_t>(parse_u64(value, where));
        else if (key == "r") cfg.r_max = static_cast<std::uint32_t>(parse_u64(value, where));
        else if (key == "seed") cfg.seed = parse_u64(value, where);
        else if (key == "workers") cfg.workers = static_cast<unsigned>(parse_u64(value, where));
        else if (key == "genus") { /* stored via raw below */ }
        else if (key == "trial_bound") cfg.effort.trial_division_bound = static_cast<std::uint32_t>(parse_u64(value, where));
        else if (key == "rho_budget") cfg.effort.rho_iterations = parse_u64(value, where);
        else if (key == "cofactor_bits") cfg.effort.max_cofactor_bits = static_cast<std::uint32_t>(parse_u64(value, where));
        else if (key == "enum_cap") cfg.enum_cap = parse_u64(value, where);
        else if (key == "bfs_cap") cfg.bfs_cap = parse_u64(value, where);
        else if (key == "input") cfg.input_path = value;
        else if (key == "range") {
            if (toks.size() != 2) throw ConfigError(where + ": range needs '<lo> <hi>'");
            cfg.range = {parse_u64(toks[0], where), parse_u64(toks[1], where)};
        } else if (key == "out") cfg.out_dir = value;
        else throw ConfigError(where + ": unknown key '" + key + "'");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
    if (key == "generator")
        cfg.raw[key] = cfg.raw.count(key) ? cfg.raw[key] + "; " + value : value;
    else
        cfg.raw[key] = value;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    RunConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        apply_config_line(cfg, line, path + ":" + std::to_string(lineno));
    }
    return cfg;
}

int run(const RunConfig& cfg) {
    cfg.validate();
    fs::create_directories(cfg.out_dir);

    njson report;
    report["meta"] = meta_json(cfg);
    int status;
    if (cfg.subcommand == "apollonian") status = run_apollonian(cfg, report);
    else if (cfg.subcommand == "strongapprox") status = run_strongapprox(cfg, report);
    else if (cfg.subcommand == "spectral") status = run_spectral(cfg, report);
    else if (cfg.subcommand == "sieve") status = run_sieve(cfg, report);
    else if (cfg.subcommand == "saturation") status = run_saturation(cfg, report);
    else status = run_dt3m(cfg, report);

    report["status"] = status == kExitOk ? "ok" : "incomplete";
    write_json_file(fs::path(cfg.out_dir) / (cfg.subcommand + ".json"), report);
    return status;
}

}  // namespace orbsieve::cli
