#include "pdtomo/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "pdtomo/field_io.hpp"

namespace pdt {

using nlohmann::json;
namespace fs = std::filesystem;

void ExperimentConfig::validate() const {
    if (grid_n < 4) throw std::invalid_argument("config: grid_n must be >= 4");
    if (noise_alpha < 0.0) throw std::invalid_argument("config: noise alpha must be >= 0");
    if (illuminations.p < 1) throw std::invalid_argument("config: illuminations.p must be >= 1");
    static const std::vector<std::string> pipelines = {
        "forward", "anisotropy", "det-theta", "det-coupled", "full", "admissibility"};
    if (std::find(pipelines.begin(), pipelines.end(), pipeline) == pipelines.end()) {
        throw std::invalid_argument("config: unknown pipeline '" + pipeline + "'");
    }
    static const std::vector<std::string> families = {"triplet", "triplet-harmonic", "quad",
                                                      "pair-xy", "rotated"};
    if (std::find(families.begin(), families.end(), illuminations.family) == families.end()) {
        throw std::invalid_argument("config: unknown illumination family '" +
                                    illuminations.family + "'");
    }
    if (phantom.name == "csv") {
        for (const auto* p : {&phantom.det_sqrt_csv, &phantom.xi_csv, &phantom.zeta_csv}) {
            if (!fs::exists(*p)) {
                throw std::invalid_argument("config: phantom CSV does not exist: " + *p);
            }
        }
    }
    if (anisotropy_source != "true" && anisotropy_source != "reconstructed") {
        throw std::invalid_argument("config: anisotropy_source must be 'true' or 'reconstructed'");
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    json j = json::parse(in);
    ExperimentConfig cfg;
    cfg.grid_n = j.value("grid_n", cfg.grid_n);
    if (j.contains("phantom")) {
        const auto& p = j["phantom"];
        if (p.is_string()) {
            cfg.phantom.name = p.get<std::string>();
        } else {
            cfg.phantom.name = p.value("name", std::string("csv"));
            cfg.phantom.det_sqrt_csv = p.value("det_sqrt_csv", std::string());
            cfg.phantom.xi_csv = p.value("xi_csv", std::string());
            cfg.phantom.zeta_csv = p.value("zeta_csv", std::string());
            cfg.phantom.kappa0 = p.value("kappa0", cfg.phantom.kappa0);
        }
    }
    if (j.contains("illuminations")) {
        cfg.illuminations.family = j["illuminations"].value("family", cfg.illuminations.family);
        cfg.illuminations.p = j["illuminations"].value("p", cfg.illuminations.p);
    }
    if (j.contains("noise")) {
        cfg.noise_alpha = j["noise"].value("alpha", cfg.noise_alpha);
        cfg.noise_seed = j["noise"].value("seed", cfg.noise_seed);
    }
    cfg.pipeline = j.value("pipeline", cfg.pipeline);
    cfg.anisotropy_source = j.value("anisotropy_source", cfg.anisotropy_source);
    if (j.contains("thresholds")) {
        cfg.thresholds.c0 = j["thresholds"].value("c0", cfg.thresholds.c0);
        cfg.thresholds.y0 = j["thresholds"].value("y0", cfg.thresholds.y0);
        cfg.recon_rel_threshold = j["thresholds"].value("xy_rel", cfg.recon_rel_threshold);
    }
    cfg.floor_eps = j.value("floor_eps", cfg.floor_eps);
    if (j.contains("solver")) {
        cfg.solver.tolerance = j["solver"].value("tolerance", cfg.solver.tolerance);
        cfg.solver.max_direct_n = j["solver"].value("max_direct_n", cfg.solver.max_direct_n);
    }
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    cfg.validate();
    return cfg;
}

namespace {

json config_json(const ExperimentConfig& cfg) {
    json j;
    j["grid_n"] = cfg.grid_n;
    if (cfg.phantom.name == "csv") {
        j["phantom"] = {{"name", "csv"},
                        {"det_sqrt_csv", cfg.phantom.det_sqrt_csv},
                        {"xi_csv", cfg.phantom.xi_csv},
                        {"zeta_csv", cfg.phantom.zeta_csv},
                        {"kappa0", cfg.phantom.kappa0}};
    } else {
        j["phantom"] = cfg.phantom.name;
    }
    j["illuminations"] = {{"family", cfg.illuminations.family}, {"p", cfg.illuminations.p}};
    j["noise"] = {{"alpha", cfg.noise_alpha}, {"seed", cfg.noise_seed}};
    j["pipeline"] = cfg.pipeline;
    j["anisotropy_source"] = cfg.anisotropy_source;
    j["thresholds"] = {{"c0", cfg.thresholds.c0},
                       {"y0", cfg.thresholds.y0},
                       {"xy_rel", cfg.recon_rel_threshold}};
    j["floor_eps"] = cfg.floor_eps;
    j["solver"] = {{"tolerance", cfg.solver.tolerance},
                   {"max_direct_n", cfg.solver.max_direct_n}};
    j["output_dir"] = cfg.output_dir;
    return j;
}

ConductivityField make_truth(const ExperimentConfig& cfg, const Grid& grid) {
    if (cfg.phantom.name == "csv") {
        ConductivityField c = load_phantom_csv(cfg.phantom.det_sqrt_csv, cfg.phantom.xi_csv,
                                               cfg.phantom.zeta_csv, cfg.phantom.kappa0);
        if (c.grid() != grid) {
            throw std::invalid_argument("phantom CSV grid does not match configured grid_n");
        }
        return c;
    }
    return make_phantom(cfg.phantom.name, grid);
}

std::vector<Illumination> base_triplet(const ExperimentConfig& cfg) {
    if (cfg.illuminations.family == "triplet-harmonic") return triplet_harmonic();
    return triplet_standard();
}

/// Cross-section row index nearest to x = 0.5.
int cross_section_ix(const Grid& g) {
    return static_cast<int>(std::lround(0.75 * g.n()));
}

void write_cross_section(const std::string& path, const ScalarField& truth,
                         const ScalarField& rec) {
    const Grid& g = truth.grid();
    const int ix = cross_section_ix(g);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "y,true,reconstructed\n";
    for (int iy = 0; iy <= g.n(); ++iy) {
        out << format_full(g.y(iy)) << ',' << format_full(truth(ix, iy)) << ','
            << format_full(rec(ix, iy)) << '\n';
    }
}

void write_mask_csv(const std::string& path, const Grid& g,
                    const std::vector<std::uint8_t>& mask) {
    ScalarField m = ScalarField::zero(g);
    for (int k = 0; k < g.node_count(); ++k) m[k] = mask[k] ? 1.0 : 0.0;
    write_field_csv(m, path);
}

struct PipelineContext {
    ExperimentConfig cfg;
    Grid grid;
    DerivativeOps ops;
    ConductivityField truth;
    fs::path out;

    PipelineContext(const ExperimentConfig& c)
        : cfg(c), grid(c.grid_n), ops(grid), truth(make_truth(c, grid)) {
        if (!cfg.output_dir.empty()) {
            out = cfg.output_dir;
            fs::create_directories(out);
        }
    }

    bool exporting() const { return !cfg.output_dir.empty(); }
    std::string path(const std::string& name) const { return (out / name).string(); }
};

PowerDensitySet noisy_densities(const PipelineContext& ctx, const ForwardSolver& solver,
                                const std::vector<Illumination>& gs, std::uint64_t stream) {
    PowerDensitySet H = power_densities(ctx.truth, solver.solve_all(gs), ctx.ops);
    for (const auto& g : gs) H.tags.push_back(g.tag);
    if (ctx.cfg.noise_alpha > 0.0) {
        H = add_noise(H, NoiseSpec{ctx.cfg.noise_alpha, ctx.cfg.noise_seed, stream});
    }
    return H;
}

/// Solves a 3-illumination set and returns its (possibly noisy) triplet data.
TripletData noisy_triplet_data(const PipelineContext& ctx, const ForwardSolver& solver,
                               const std::vector<Illumination>& gs, std::uint64_t stream) {
    return triplet_data(noisy_densities(ctx, solver, gs, stream), ctx.ops, ctx.cfg.floor_eps);
}

struct AnisotropyStage {
    MaskedAnisotropy recon;
    AdmissibilityReport admissibility;
    ScalarField log_d_ratio;  // log d1 - log d2 of the first triplet
};

AnisotropyStage run_anisotropy_stage(const PipelineContext& ctx) {
    const ForwardSolver solver(ctx.truth, ctx.ops, ctx.cfg.solver);
    const ReconOptions ropts{ctx.cfg.recon_rel_threshold};

    if (ctx.cfg.illuminations.family == "rotated") {
        const auto family = rotated_family(ctx.cfg.illuminations.p);
        std::vector<DataVectorFields> Ds;
        Ds.reserve(family.size());
        std::optional<AdmissibilityReport> first_rep;
        std::optional<ScalarField> ratio;
        for (size_t l = 0; l < family.size(); ++l) {
            const std::vector<Illumination> gs = {family[l][0], family[l][1], family[l][2]};
            TripletData td = noisy_triplet_data(ctx, solver, gs, l);
            if (!first_rep) {
                first_rep = admissibility(td.f1, td.f2, td.D, ctx.cfg.thresholds);
                ratio = ScalarField(ctx.grid,
                                    (td.f1.d.array().log() - td.f2.d.array().log()).matrix());
            }
            Ds.push_back(std::move(td.D));
        }
        return AnisotropyStage{reconstruct_least_squares(Ds, ropts), *first_rep,
                               std::move(*ratio)};
    }

    if (ctx.cfg.illuminations.family == "quad") {
        PowerDensitySet H = noisy_densities(ctx, solver, quad_standard(), 0);
        FrameData f1 = gram_schmidt_frame(H, 0, 1, ctx.ops, ctx.cfg.floor_eps);
        FrameData f2 = gram_schmidt_frame(H, 2, 3, ctx.ops, ctx.cfg.floor_eps);
        DataVectorFields D = xy_fields_pairs(H, 0, 1, f1, 2, 3, f2, ctx.ops);
        AdmissibilityReport rep = admissibility(f1, f2, D, ctx.cfg.thresholds);
        ScalarField ratio(ctx.grid, (f1.d.array().log() - f2.d.array().log()).matrix());
        return AnisotropyStage{reconstruct_pointwise(D, ropts), rep, std::move(ratio)};
    }

    TripletData td = noisy_triplet_data(ctx, solver, base_triplet(ctx.cfg), 0);
    AdmissibilityReport rep = admissibility(td.f1, td.f2, td.D, ctx.cfg.thresholds);
    ScalarField ratio(ctx.grid, (td.f1.d.array().log() - td.f2.d.array().log()).matrix());
    return AnisotropyStage{reconstruct_pointwise(td.D, ropts), rep, std::move(ratio)};
}

void report_anisotropy_fields(const PipelineContext& ctx, const AnisotropyStage& stage,
                              ExperimentReport& report) {
    const auto& mask = stage.recon.mask;
    report.fields.push_back({"xi", compute_errors(stage.recon.fields.xi, ctx.truth.aniso.xi, &mask),
                             stage.recon.masked_count});
    report.fields.push_back({"zeta",
                             compute_errors(stage.recon.fields.zeta, ctx.truth.aniso.zeta, &mask),
                             stage.recon.masked_count});
    if (ctx.exporting()) {
        export_field_with_truth(ctx.out.string(), "xi", stage.recon.fields.xi,
                                ctx.truth.aniso.xi);
        export_field_with_truth(ctx.out.string(), "zeta", stage.recon.fields.zeta,
                                ctx.truth.aniso.zeta);
        write_mask_csv(ctx.path("mask.csv"), ctx.grid, mask);
        write_field_csv(stage.log_d_ratio, ctx.path("log_d_ratio.csv"));
    }
}

struct DetInputs {
    PowerDensitySet H;
    std::vector<ScalarField> us;  // noiseless forward solutions of (x, y)
};

DetInputs det_inputs(const PipelineContext& ctx) {
    const ForwardSolver solver(ctx.truth, ctx.ops, ctx.cfg.solver);
    const auto gs = pair_xy();
    std::vector<ScalarField> us = solver.solve_all(gs);
    PowerDensitySet H = power_densities(ctx.truth, us, ctx.ops);
    for (const auto& g : gs) H.tags.push_back(g.tag);
    if (ctx.cfg.noise_alpha > 0.0) {
        H = add_noise(H, NoiseSpec{ctx.cfg.noise_alpha, ctx.cfg.noise_seed, 0});
    }
    return DetInputs{std::move(H), std::move(us)};
}

AnisotropyXiZeta select_anisotropy(const PipelineContext& ctx, ExperimentReport& report) {
    if (ctx.cfg.anisotropy_source == "reconstructed" || ctx.cfg.pipeline == "full") {
        AnisotropyStage stage = run_anisotropy_stage(ctx);
        report_anisotropy_fields(ctx, stage, report);
        report.admissibility = stage.admissibility;
        return stage.recon.fields;
    }
    return ctx.truth.aniso;
}

void run_det_theta(const PipelineContext& ctx, ExperimentReport& report) {
    const AnisotropyXiZeta aniso = select_anisotropy(ctx, report);
    DetInputs in = det_inputs(ctx);
    const FrameData frame = gram_schmidt_frame(in.H, 0, 1, ctx.ops, ctx.cfg.floor_eps);
    const PoissonSolver poisson(ctx.grid, ctx.cfg.solver);

    // exact data for the Dirichlet boundary values and the error reference
    const ScalarField theta_ref = true_theta(ctx.truth.aniso, in.us[0], ctx.ops);
    const ScalarField theta = reconstruct_theta(aniso, frame, theta_ref, ctx.ops, poisson);
    report.fields.push_back({"theta", compute_errors(theta, theta_ref), 0});

    // compatibility diagnostic: the right-hand side should be near curl-free
    const ScalarField curl = ctx.ops.curl(theta_gradient_field(aniso, frame, ctx.ops));
    report.diagnostics.emplace_back("theta_rhs_curl_l2",
                                    ctx.grid.h() * curl.values().norm());

    const ScalarField log_det_ref(ctx.grid, ctx.truth.det_sqrt.array().log().matrix());
    const DetThetaResult det =
        reconstruct_log_det(theta, sqrt_of_anisotropy(aniso), frame, log_det_ref, ctx.ops,
                            poisson);
    report.fields.push_back({"det_sqrt", compute_errors(det.det_sqrt, ctx.truth.det_sqrt), 0});

    if (ctx.exporting()) {
        export_field_with_truth(ctx.out.string(), "theta", theta, theta_ref);
        export_field_with_truth(ctx.out.string(), "det_sqrt", det.det_sqrt, ctx.truth.det_sqrt);
    }
}

void run_det_coupled(const PipelineContext& ctx, ExperimentReport& report) {
    const AnisotropyXiZeta aniso = select_anisotropy(ctx, report);
    DetInputs in = det_inputs(ctx);
    const auto gs = pair_xy();
    const ScalarField g1 = gs[0].sample(ctx.grid);
    const ScalarField g2 = gs[1].sample(ctx.grid);
    const CoupledSolution sol =
        solve_coupled(aniso, in.H, g1, g2, ctx.ops, ctx.cfg.solver, ctx.cfg.floor_eps);
    report.fields.push_back({"u1", compute_errors(sol.u1, in.us[0]), 0});
    report.fields.push_back({"u2", compute_errors(sol.u2, in.us[1]), 0});

    // equivalence diagnostic: residual of the non-divergence form on the solution
    const auto [res1, res2] =
        nondivergence_residual(aniso, in.H, sol, ctx.ops, ctx.cfg.floor_eps);
    double res_max = 0.0;
    for (int ix = 2; ix < ctx.grid.n() - 1; ++ix) {
        for (int iy = 2; iy < ctx.grid.n() - 1; ++iy) {
            res_max = std::max({res_max, std::abs(res1(ix, iy)), std::abs(res2(ix, iy))});
        }
    }
    report.diagnostics.emplace_back("nondivergence_residual_interior_max", res_max);

    const PoissonSolver poisson(ctx.grid, ctx.cfg.solver);
    const ScalarField inv_det_ref(ctx.grid, ctx.truth.det_sqrt.array().inverse().matrix());
    const DetCoupledResult det = reconstruct_inv_det(aniso, in.H, sol, inv_det_ref, ctx.ops,
                                                     poisson, ctx.cfg.floor_eps);
    report.fields.push_back({"det_sqrt", compute_errors(det.det_sqrt, ctx.truth.det_sqrt),
                             det.nonpositive_nodes});

    if (ctx.exporting()) {
        export_field_with_truth(ctx.out.string(), "u1", sol.u1, in.us[0]);
        export_field_with_truth(ctx.out.string(), "u2", sol.u2, in.us[1]);
        export_field_with_truth(ctx.out.string(), "det_sqrt", det.det_sqrt, ctx.truth.det_sqrt);
    }
}

void run_forward_only(const PipelineContext& ctx, ExperimentReport& report) {
    const ForwardSolver solver(ctx.truth, ctx.ops, ctx.cfg.solver);
    std::vector<Illumination> gs;
    if (ctx.cfg.illuminations.family == "pair-xy") {
        gs = pair_xy();
    } else if (ctx.cfg.illuminations.family == "quad") {
        gs = quad_standard();
    } else {
        gs = base_triplet(ctx.cfg);
    }
    PowerDensitySet H = noisy_densities(ctx, solver, gs, 0);
    if (H.m() == 3) {
        TripletData td = triplet_data(H, ctx.ops, ctx.cfg.floor_eps);
        report.admissibility = admissibility(td.f1, td.f2, td.D, ctx.cfg.thresholds);
    } else if (H.m() == 4) {
        FrameData f1 = gram_schmidt_frame(H, 0, 1, ctx.ops, ctx.cfg.floor_eps);
        FrameData f2 = gram_schmidt_frame(H, 2, 3, ctx.ops, ctx.cfg.floor_eps);
        DataVectorFields D = xy_fields_pairs(H, 0, 1, f1, 2, 3, f2, ctx.ops);
        report.admissibility = admissibility(f1, f2, D, ctx.cfg.thresholds);
    }
    if (ctx.exporting()) {
        export_power_density_set(H, ctx.out.string(), "H");
    }
}

}  // namespace

const FieldReport* ExperimentReport::field(const std::string& name) const {
    for (const auto& f : fields) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    PipelineContext ctx(cfg);
    ExperimentReport report;
    report.pipeline = cfg.pipeline;

    if (cfg.pipeline == "forward") {
        run_forward_only(ctx, report);
    } else if (cfg.pipeline == "anisotropy" || cfg.pipeline == "admissibility") {
        AnisotropyStage stage = run_anisotropy_stage(ctx);
        report.admissibility = stage.admissibility;
        if (cfg.pipeline == "anisotropy") {
            report_anisotropy_fields(ctx, stage, report);
        }
    } else if (cfg.pipeline == "det-theta" || cfg.pipeline == "full") {
        run_det_theta(ctx, report);
    } else if (cfg.pipeline == "det-coupled") {
        run_det_coupled(ctx, report);
    }

    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ctx.exporting()) {
        std::ofstream out(ctx.path("report.json"));
        out << report_to_json(report, cfg) << '\n';
    }
    return report;
}

std::string report_to_json(const ExperimentReport& report, const ExperimentConfig& cfg) {
    json j;
    j["pipeline"] = report.pipeline;
    j["config"] = config_json(cfg);
    if (report.admissibility) {
        const auto& a = *report.admissibility;
        j["admissibility"] = {{"min_d1", a.min_d1},     {"min_d2", a.min_d2},
                              {"min_y_norm", a.min_y_norm}, {"cond1_ok", a.cond1_ok},
                              {"cond2_ok", a.cond2_ok}, {"floored_nodes", a.floored_nodes}};
    }
    j["fields"] = json::array();
    for (const auto& f : report.fields) {
        j["fields"].push_back({{"name", f.name},
                               {"rel_l2", f.errors.rel_l2},
                               {"rel_linf", f.errors.rel_linf},
                               {"masked_nodes", f.masked_nodes}});
    }
    if (!report.diagnostics.empty()) {
        j["diagnostics"] = json::object();
        for (const auto& [name, value] : report.diagnostics) {
            j["diagnostics"][name] = value;
        }
    }
    return j.dump(2);
}

std::string config_to_json(const ExperimentConfig& cfg) { return config_json(cfg).dump(2); }

void export_field_with_truth(const std::string& out_dir, const std::string& name,
                             const ScalarField& rec, const ScalarField& truth) {
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_field_csv(rec, (dir / (name + "_rec.csv")).string());
    write_field_csv(truth, (dir / (name + "_true.csv")).string());
    write_cross_section((dir / ("cross_" + name + ".csv")).string(), truth, rec);
}

void export_power_density_set(const PowerDensitySet& H, const std::string& out_dir,
                              const std::string& basename) {
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    json sidecar;
    sidecar["grid_n"] = H.grid().n();
    sidecar["m"] = H.m();
    sidecar["alpha"] = H.alpha;
    sidecar["seed"] = H.seed;
    sidecar["tags"] = H.tags;
    json files = json::array();
    for (int i = 0; i < H.m(); ++i) {
        for (int j = i; j < H.m(); ++j) {
            const std::string name =
                basename + "_" + std::to_string(i + 1) + std::to_string(j + 1) + ".csv";
            write_field_csv(H.at(i, j), (dir / name).string());
            files.push_back({{"i", i}, {"j", j}, {"file", name}});
        }
    }
    sidecar["files"] = files;
    std::ofstream out(dir / (basename + ".json"));
    if (!out) throw std::runtime_error("cannot write power-density sidecar");
    out << sidecar.dump(2) << '\n';
}

PowerDensitySet import_power_density_set(const std::string& sidecar_path) {
    std::ifstream in(sidecar_path);
    if (!in) throw std::runtime_error("cannot open sidecar: " + sidecar_path);
    json sidecar = json::parse(in);
    const Grid grid(sidecar.at("grid_n").get<int>());
    PowerDensitySet H(grid, sidecar.at("m").get<int>());
    H.alpha = sidecar.value("alpha", 0.0);
    H.seed = sidecar.value("seed", std::uint64_t{0});
    if (sidecar.contains("tags")) {
        H.tags = sidecar["tags"].get<std::vector<std::string>>();
    }
    const fs::path dir = fs::path(sidecar_path).parent_path();
    for (const auto& f : sidecar.at("files")) {
        ScalarField field = read_field_csv((dir / f.at("file").get<std::string>()).string());
        if (field.grid() != grid) {
            throw std::runtime_error("power-density CSV grid mismatch");
        }
        H.at(f.at("i").get<int>(), f.at("j").get<int>()) = std::move(field);
    }
    return H;
}

}  // namespace pdt
