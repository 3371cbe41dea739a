#ifndef PDTOMO_EXPERIMENT_HPP
#define PDTOMO_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "pdtomo/anisotropy.hpp"
#include "pdtomo/det_coupled.hpp"
#include "pdtomo/det_theta.hpp"
#include "pdtomo/frame.hpp"
#include "pdtomo/metrics.hpp"
#include "pdtomo/phantom.hpp"

namespace pdt {

struct PhantomSpec {
    std::string name = "smooth";  // "smooth" | "rough" | "identity" | "csv"
    std::string det_sqrt_csv, xi_csv, zeta_csv;  // used when name == "csv"
    double kappa0 = 8.0;
};

struct IlluminationSpec {
    // "triplet" (x+y, y+0.1y^2, -x+y) | "triplet-harmonic" | "quad" (m = 4
    // arrangement with pairs (g1,g2),(g3,g4)) | "pair-xy" | "rotated"
    std::string family = "triplet";
    int p = 1;  // triplet count for the rotated family
};

struct ExperimentConfig {
    int grid_n = 128;
    PhantomSpec phantom;
    IlluminationSpec illuminations;
    double noise_alpha = 0.0;    // percent
    std::uint64_t noise_seed = 1;
    std::string pipeline = "anisotropy";  // forward | anisotropy | det-theta |
                                          // det-coupled | full | admissibility
    std::string anisotropy_source = "true";  // "true" | "reconstructed"
    AdmissibilityThresholds thresholds;
    double recon_rel_threshold = 1e-10;
    double floor_eps = 1e-14;
    SolverOptions solver;
    std::string output_dir;  // empty = no file output

    void validate() const;
};

ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& cfg);

struct FieldReport {
    std::string name;
    ErrorPair errors;
    int masked_nodes = 0;
};

struct ExperimentReport {
    std::string pipeline;
    std::optional<AdmissibilityReport> admissibility;
    std::vector<FieldReport> fields;
    std::vector<std::pair<std::string, double>> diagnostics;
    double runtime_seconds = 0.0;  // reported on stdout; kept out of report.json
                                   // so identical runs produce identical bytes

    const FieldReport* field(const std::string& name) const;
    bool admissibility_failed() const {
        return admissibility.has_value() && !admissibility->ok();
    }
};

/// Runs the configured pipeline end to end: forward solves, noise, frame
/// data, the selected reconstruction, error metrics against the phantom
/// ground truth, and (when output_dir is set) CSV/JSON artifact export.
/// Deterministic for a fixed config.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Serializes the report (without runtime) as pretty JSON.
std::string report_to_json(const ExperimentReport& report, const ExperimentConfig& cfg);

/// Writes per-field CSVs: <name>_rec.csv, <name>_true.csv and the x = 0.5
/// cross-section table cross_<name>.csv (columns y, true, rec).
void export_field_with_truth(const std::string& out_dir, const std::string& name,
                             const ScalarField& rec, const ScalarField& truth);

/// Power-density bundle export: one CSV per functional H_ij (i <= j) plus a
/// JSON sidecar listing grid size, tags, noise metadata and file names.
/// import_power_density_set round-trips bit-exactly.
void export_power_density_set(const PowerDensitySet& H, const std::string& out_dir,
                              const std::string& basename);
PowerDensitySet import_power_density_set(const std::string& sidecar_path);

}  // namespace pdt

#endif
