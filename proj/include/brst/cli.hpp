#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace brst::cli {

enum class Format { text, json };

/// Everything a subcommand needs, after flag parsing.
struct JobSpec {
  std::string command;       // validate, killing, cohomology, hs-table, descent, transgress, deform-check, operator
  std::string action;        // descent: table | classify
  std::string algebra;       // builtin name
  std::string spec_file;     // or a JSON spec file
  std::string split;         // "K=..;J=.." or empty for the default
  std::string scheme;        // empty: per-command default
  int max_curv_degree = 4;
  std::optional<int> max_ghost;  // default 2 dim
  Format format = Format::json;
  std::string cache_dir;     // empty: $BRST_CACHE_DIR or no cache
  int jobs = 1;
  bool verbose = false;

  // subcommand specifics
  std::string module = "symmetric";
  std::string op;            // cohomology / operator
  std::vector<std::string> slice;  // "grading=v" or "grading=lo..hi"
  std::optional<int> ghost;
  std::string theta;
  std::string lambda = "1";
  std::string mu = "0";
  bool representatives = false;
  bool crosscheck = false;
};

/// Computes the JSON result of a job (through the cache when configured).
nlohmann::json compute(const JobSpec& job, std::ostream& log);

/// Renders a result; identical inputs give identical bytes.
std::string render(const JobSpec& job, const nlohmann::json& result);

/// Runs a job, writing the artifact to `out` and errors as JSON to `err`.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

/// Flag parsing plus run().
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace brst::cli
