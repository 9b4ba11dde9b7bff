#include "qfunc/cli.hpp"

#include <fstream>
#include <future>
#include <iomanip>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qfunc/equations.hpp"
#include "qfunc/error.hpp"
#include "qfunc/qops.hpp"
#include "qfunc/series_io.hpp"

namespace qfunc::cli {

namespace {

struct InputOptions {
  std::string in;
  std::string expr;
  std::string q = "1/2";
  int exact_to = 6;
  std::vector<std::string> vars;
  const CLI::Option* q_opt = nullptr;
};

struct MatrixOptions {
  std::string eq = "all";
  int seeds = 50;
  int degree = 6;
  std::string q_list = "1/2,2/3,3/5,9/10";
  int coef_bound = 9;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open input file '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Parse, "cannot open output file '" + path + "'");
  out << text;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void add_input_options(CLI::App* cmd, InputOptions& opts, const char* in_flag) {
  auto* in = cmd->add_option(in_flag, opts.in, "Series file: canonical JSON or inline polynomial");
  auto* expr = cmd->add_option("--expr", opts.expr, "Inline polynomial, e.g. \"a^2 + 3/2*a*b\"");
  in->excludes(expr);
  opts.q_opt = cmd->add_option("--q", opts.q, "Value of q for inline input")
                   ->envname("QFUNC_Q")
                   ->capture_default_str();
  cmd->add_option("--exact-to", opts.exact_to, "Exactness bound for inline input")
      ->envname("QFUNC_EXACT_TO")
      ->capture_default_str();
  cmd->add_option("--vars", opts.vars, "Declared variable order for inline input")
      ->delimiter(',')
      ->envname("QFUNC_VARS");
}

MultiSeries load_input(const InputOptions& opts, int max_order,
                       const std::vector<std::string>& extra_vars) {
  std::string text;
  if (!opts.in.empty()) {
    text = read_file(opts.in);
  } else if (!opts.expr.empty()) {
    text = opts.expr;
  } else {
    throw Error(ErrorCode::Parse, "no input: pass a series file or --expr");
  }

  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text[start] == '{') {
    MultiSeries f = from_json(text, max_order);
    if (opts.q_opt && opts.q_opt->count() > 0 && !(Rational::parse(opts.q) == f.context().q())) {
      throw Error(ErrorCode::Parse, "field \"q\" in the series file (" +
                                        f.context().q().to_string() + ") disagrees with --q " +
                                        opts.q);
    }
    return f;
  }
  return series_from_polynomial(text, make_context(Rational::parse(opts.q), max_order),
                                opts.exact_to, opts.vars, extra_vars);
}

EquationId equation_or_throw(const std::string& name) {
  if (auto eq = parse_equation(name)) return *eq;
  throw Error(ErrorCode::Parse, "unknown equation id '" + name + "'");
}

void print_witness(std::ostream& os, const MultiSeries& f, const Witness& w) {
  const std::string mono = render_monomial(f.vars(), w.monomial);
  os << "witness: monomial " << (mono.empty() ? "1" : mono) << " coefficient " << w.value << '\n';
}

// ---------------------------------------------------------------------------

int cmd_expand(const std::string& op_name, const std::string& src_flag, const std::string& b_var,
               const std::string& a_var, const std::string& c_flag, const InputOptions& input,
               const std::string& out_path, bool json, int max_order, std::ostream& out) {
  const auto op = parse_operator(op_name);
  if (!op) throw Error(ErrorCode::Parse, "unknown operator id '" + op_name + "'");

  OperatorRoles roles;
  roles.b = b_var;
  roles.a = a_var;
  std::vector<std::string> extra;
  if (is_cauchy(*op)) {
    roles.src = !c_flag.empty() ? c_flag : (!src_flag.empty() ? src_flag : "c");
    extra = {roles.a, roles.src};
  } else {
    roles.src = src_flag.empty() ? "a" : src_flag;
    extra = {roles.src};
  }

  const MultiSeries f = load_input(input, max_order, extra);
  const MultiSeries result = apply_operator(*op, f, roles);
  if (!out_path.empty()) write_file(out_path, to_json(result));
  out << (json ? to_json(result) : render(result) + "\n");
  return kSuccess;
}

int cmd_residual(const std::string& eq_name, const InputOptions& input, const std::string& out_path,
                 int max_order, std::ostream& out) {
  const EquationId eq = equation_or_throw(eq_name);
  const MultiSeries f = load_input(input, max_order, {});
  const MultiSeries r = residual(eq, f);
  if (!out_path.empty()) write_file(out_path, to_json(r));
  out << "residual: " << render(r) << '\n';
  if (auto w = first_nonzero(r)) {
    out << "nonzero residual up to degree " << r.exact_to() << '\n';
    print_witness(out, r, *w);
    return kMathFailure;
  }
  out << "residual is zero up to degree " << r.exact_to() << '\n';
  return kSuccess;
}

int cmd_solve(const std::string& eq_name, const InputOptions& input, const std::string& method,
              const std::string& out_path, bool json, int max_order, std::ostream& out) {
  const EquationId eq = equation_or_throw(eq_name);
  if (method != "operator" && method != "recurrence" && method != "both") {
    throw Error(ErrorCode::Parse, "--method must be operator, recurrence or both");
  }
  const MultiSeries boundary = load_input(input, max_order, {});

  int code = kSuccess;
  std::optional<MultiSeries> solution;
  if (method == "recurrence") {
    solution = solve_recurrence(eq, boundary);
  } else {
    solution = solve_operator(eq, boundary);
  }
  if (method == "both") {
    const MultiSeries other = solve_recurrence(eq, boundary);
    const MultiSeries diff = sub(*solution, other);
    if (auto w = first_nonzero(diff)) {
      out << "operator and recurrence solutions disagree\n";
      print_witness(out, diff, *w);
      code = kMathFailure;
    } else {
      out << "operator and recurrence solutions agree up to degree " << diff.exact_to() << '\n';
    }
    if (eq == EquationId::THM_2_4) {
      const auto verdict = adjudicate_thm2_4(boundary);
      out << "thm2_4 sign: T_btheta_plus " << (verdict.plus_matches ? "matches" : "does not match")
          << " the recurrence; T_btheta_minus (printed sign) "
          << (verdict.minus_matches ? "matches" : "does not match") << '\n';
    }
  }
  if (!out_path.empty()) write_file(out_path, to_json(*solution));
  out << (json ? to_json(*solution) : render(*solution) + "\n");
  return code;
}

struct CellResult {
  int passed = 0;
  int total = 0;
  std::optional<std::string> first_failure;
};

CellResult run_cell(EquationId eq, const ContextPtr& ctx, const MatrixOptions& opts) {
  CellResult cell;
  for (int seed = 1; seed <= opts.seeds; ++seed) {
    const MultiSeries boundary =
        random_series(ctx, static_cast<std::uint64_t>(seed), boundary_vars(eq), opts.degree,
                      opts.coef_bound);
    const VerificationReport report = verify(eq, boundary);
    ++cell.total;
    if (report.passed()) {
      ++cell.passed;
    } else if (!cell.first_failure) {
      std::ostringstream os;
      os << "seed " << seed << ": residual_is_zero=" << report.residual_is_zero
         << " solvers_agree=" << report.solvers_agree;
      if (report.failure_witness) {
        os << " witness [";
        for (std::size_t i = 0; i < report.failure_witness->monomial.size(); ++i) {
          os << (i ? "," : "") << report.failure_witness->monomial[i];
        }
        os << "] = " << report.failure_witness->value;
      }
      cell.first_failure = os.str();
    }
  }
  return cell;
}

int cmd_matrix(const MatrixOptions& opts, bool selftest, int max_order, std::ostream& out) {
  std::vector<EquationId> equations;
  if (opts.eq == "all") {
    equations.assign(std::begin(kAllEquations), std::end(kAllEquations));
  } else {
    for (const auto& name : split(opts.eq, ',')) equations.push_back(equation_or_throw(name));
  }
  if (opts.seeds < 0) throw Error(ErrorCode::OutOfRange, "--seeds must be nonnegative");
  if (opts.degree < 0 || opts.degree > max_order) {
    throw Error(ErrorCode::OutOfRange, "--degree must lie in [0, max_order=" +
                                           std::to_string(max_order) + "]");
  }
  std::vector<ContextPtr> contexts;
  std::vector<std::string> q_names;
  for (const auto& text : split(opts.q_list, ',')) {
    contexts.push_back(make_context(Rational::parse(text), max_order));
    q_names.push_back(contexts.back()->q().to_string());
  }
  if (contexts.empty()) throw Error(ErrorCode::Parse, "--q list is empty");

  std::map<std::pair<std::size_t, std::size_t>, std::future<CellResult>> futures;
  for (std::size_t i = 0; i < equations.size(); ++i) {
    for (std::size_t j = 0; j < contexts.size(); ++j) {
      futures.emplace(std::pair{i, j}, std::async(std::launch::async, run_cell, equations[i],
                                                  contexts[j], std::cref(opts)));
    }
  }

  bool all_pass = true;
  out << std::left << std::setw(9) << "equation" << std::setw(15) << "operator";
  for (const auto& q : q_names) out << std::setw(12) << ("q=" + q);
  out << '\n';
  std::vector<std::string> failures;
  for (std::size_t i = 0; i < equations.size(); ++i) {
    out << std::setw(9) << to_string(equations[i]) << std::setw(15)
        << to_string(dispatch_operator(equations[i]));
    for (std::size_t j = 0; j < contexts.size(); ++j) {
      const CellResult cell = futures.at({i, j}).get();
      const bool ok = cell.passed == cell.total;
      all_pass = all_pass && ok;
      out << std::setw(12)
          << ((ok ? "pass " : "FAIL ") + std::to_string(cell.passed) + "/" +
              std::to_string(cell.total));
      if (cell.first_failure) {
        failures.push_back(std::string(to_string(equations[i])) + " q=" + q_names[j] + " " +
                           *cell.first_failure);
      }
    }
    out << '\n';
  }
  for (const auto& f : failures) out << "failure: " << f << '\n';

  const bool has_thm2_4 =
      std::find(equations.begin(), equations.end(), EquationId::THM_2_4) != equations.end();
  if (has_thm2_4) {
    bool plus_everywhere = true;
    bool minus_anywhere = false;
    for (const auto& ctx : contexts) {
      const auto probe = monomial_series(ctx, {"a"}, std::min(1, ctx->max_order()), {1});
      const auto verdict = adjudicate_thm2_4(probe);
      plus_everywhere = plus_everywhere && verdict.plus_matches;
      minus_anywhere = minus_anywhere || verdict.minus_matches;
    }
    out << "note: thm2_4 recurrence selects "
        << (plus_everywhere ? "T_btheta_plus, i.e. T(+b theta)" : "no consistent variant")
        << "; the printed form T(-b theta) "
        << (minus_anywhere ? "also matches" : "disagrees (probe boundary f(a,0) = a)") << '\n';
  }

  if (selftest) {
    const int max_n = std::min(12, max_order);
    for (const auto& ctx : contexts) {
      for (auto kind : {DegenerationKind::CauchyDqToT, DegenerationKind::CauchyThetaToE}) {
        const auto report = degeneration_check(*ctx, kind, max_n);
        all_pass = all_pass && report.passed();
        out << "degeneration " << to_string(kind) << " q=" << ctx->q() << " n<=" << max_n << ": "
            << (report.passed() ? "pass" : "FAIL") << '\n';
      }
    }
  }

  out << (all_pass ? "all checks passed" : "some checks FAILED") << '\n';
  return all_pass ? kSuccess : kMathFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact q-operator kernel on truncated formal power series"};
  app.name(args.empty() ? "qfunc" : args.front());
  app.require_subcommand(1);

  int max_order = 16;
  app.add_option("--max-order", max_order, "Global truncation order")
      ->envname("QFUNC_MAX_ORDER")
      ->capture_default_str();

  // expand
  auto* expand = app.add_subcommand("expand", "Apply a q-operator to a series");
  std::string op_name, src, b_var = "b", a_var = "a", c_var, out_path;
  bool json = false;
  InputOptions expand_in;
  expand->add_option("--op", op_name, "Operator id")->required()->envname("QFUNC_OP");
  expand->add_option("--src", src, "Variable the operator acts on")->envname("QFUNC_SRC");
  expand->add_option("--new", b_var, "New variable b")->envname("QFUNC_NEW")->capture_default_str();
  expand->add_option("--a-var", a_var, "Cauchy parameter variable a")
      ->envname("QFUNC_A_VAR")
      ->capture_default_str();
  expand->add_option("--c-var", c_var, "Cauchy operand variable c")->envname("QFUNC_C_VAR");
  expand->add_option("--out", out_path, "Write canonical JSON here")->envname("QFUNC_OUT");
  expand->add_flag("--json", json, "Print canonical JSON instead of the expansion");
  add_input_options(expand, expand_in, "--in");

  // residual
  auto* residual_cmd = app.add_subcommand("residual", "Evaluate an equation's residual");
  std::string eq_name;
  InputOptions residual_in;
  residual_cmd->add_option("--eq", eq_name, "Equation id")->required()->envname("QFUNC_EQ");
  residual_cmd->add_option("--out", out_path, "Write the residual as canonical JSON")
      ->envname("QFUNC_OUT");
  add_input_options(residual_cmd, residual_in, "--in");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an equation from boundary data");
  std::string method = "both";
  InputOptions solve_in;
  solve->add_option("--eq", eq_name, "Equation id")->required()->envname("QFUNC_EQ");
  solve->add_option("--method", method, "operator | recurrence | both")
      ->envname("QFUNC_METHOD")
      ->capture_default_str();
  solve->add_option("--out", out_path, "Write the solution as canonical JSON")->envname("QFUNC_OUT");
  solve->add_flag("--json", json, "Print canonical JSON instead of the expansion");
  add_input_options(solve, solve_in, "--boundary");

  // verify / selftest
  MatrixOptions matrix;
  auto add_matrix_options = [&](CLI::App* cmd) {
    cmd->add_option("--eq", matrix.eq, "Equation id or 'all'")
        ->envname("QFUNC_EQ")
        ->capture_default_str();
    cmd->add_option("--seeds", matrix.seeds, "Random boundaries per cell")
        ->envname("QFUNC_SEEDS")
        ->capture_default_str();
    cmd->add_option("--degree", matrix.degree, "Total degree of the boundaries")
        ->envname("QFUNC_DEGREE")
        ->capture_default_str();
    cmd->add_option("--q", matrix.q_list, "Comma-separated q values")
        ->envname("QFUNC_Q")
        ->capture_default_str();
    cmd->add_option("--coef-bound", matrix.coef_bound, "Coefficients drawn from [-B, B]")
        ->envname("QFUNC_COEF_BOUND")
        ->capture_default_str();
  };
  auto* verify_cmd = app.add_subcommand("verify", "Randomized verification matrix");
  add_matrix_options(verify_cmd);
  auto* selftest = app.add_subcommand("selftest", "Verification matrix plus degeneration checks");
  add_matrix_options(selftest);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("qfunc");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*expand) {
      return cmd_expand(op_name, src, b_var, a_var, c_var, expand_in, out_path, json, max_order,
                        out);
    }
    if (*residual_cmd) return cmd_residual(eq_name, residual_in, out_path, max_order, out);
    if (*solve) return cmd_solve(eq_name, solve_in, method, out_path, json, max_order, out);
    if (*verify_cmd) return cmd_matrix(matrix, false, max_order, out);
    if (*selftest) return cmd_matrix(matrix, true, max_order, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace qfunc::cli
