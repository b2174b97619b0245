#include "kfermion/kfermion.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "kfermion/fockrep.hpp"
#include "kfermion/harness.hpp"

struct kf_params {
  kfermion::DeformationParams p;
};

struct kf_rep {
  kfermion::QuonRep rep;
};

struct kf_report {
  kfermion::RunConfig cfg;
  kfermion::VerificationReport report;
};

namespace {

thread_local std::string last_error;

kf_status fail(kf_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
kf_status guard(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const kfermion::IoError& e) {
    return fail(KF_ERR_IO, e.what());
  } catch (const std::domain_error& e) {
    return fail(KF_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(KF_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(KF_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(KF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(KF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(KF_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

kf_status null_arg(const char* what) { return fail(KF_ERR_INVALID_ARGUMENT, std::string(what) + " is NULL"); }

}  // namespace

extern "C" {

const char* kf_last_error(void) { return last_error.c_str(); }

void kf_string_free(char* s) { std::free(s); }

kf_status kf_params_create(int k, double tol, kf_params** out) {
  if (out == nullptr) return null_arg("out");
  return guard([&] {
    *out = new kf_params{kfermion::DeformationParams::make(k, tol > 0.0 ? tol : kfermion::kDefaultTolerance)};
    return KF_OK;
  });
}

void kf_params_destroy(kf_params* p) { delete p; }

kf_status kf_qnum(const kf_params* p, double x, double* re, double* im) {
  if (p == nullptr || re == nullptr || im == nullptr) return null_arg("argument");
  return guard([&] {
    const auto v = kfermion::qnum(x, p->p.q());
    *re = v.real();
    *im = v.imag();
    return KF_OK;
  });
}

kf_status kf_rep_create(const kf_params* p, kf_rep** out) {
  if (p == nullptr || out == nullptr) return null_arg("argument");
  return guard([&] {
    *out = new kf_rep{kfermion::build_rep(p->p)};
    return KF_OK;
  });
}

void kf_rep_destroy(kf_rep* r) { delete r; }

int kf_rep_dim(const kf_rep* r) { return r == nullptr ? 0 : r->rep.params.k(); }

kf_status kf_rep_matrix(const kf_rep* r, const char* name, double* buf, size_t len) {
  if (r == nullptr || name == nullptr || buf == nullptr) return null_arg("argument");
  return guard([&] {
    const std::string n = name;
    const kfermion::FockOperator* m = nullptr;
    if (n == "a_minus") m = &r->rep.a_minus;
    else if (n == "a_plus") m = &r->rep.a_plus;
    else if (n == "a_plus_dag") m = &r->rep.a_plus_dag;
    else if (n == "a_minus_dag") m = &r->rep.a_minus_dag;
    else if (n == "number") m = &r->rep.number_op;
    else return fail(KF_ERR_INVALID_ARGUMENT, "unknown matrix '" + n + "'");
    const auto need = static_cast<size_t>(2 * m->rows() * m->cols());
    if (len < need) return fail(KF_ERR_BUFFER_TOO_SMALL, "buffer needs " + std::to_string(need) + " doubles");
    size_t i = 0;
    for (Eigen::Index a = 0; a < m->rows(); ++a) {
      for (Eigen::Index b = 0; b < m->cols(); ++b) {
        buf[i++] = (*m)(a, b).real();
        buf[i++] = (*m)(a, b).imag();
      }
    }
    return KF_OK;
  });
}

kf_status kf_run_verify(const char* config_json, kf_report** out) {
  if (out == nullptr) return null_arg("out");
  return guard([&] {
    auto cfg = kfermion::config_from_json(config_json == nullptr ? "{}" : config_json);
    auto rep = kfermion::run_suites(cfg);
    *out = new kf_report{std::move(cfg), std::move(rep)};
    return KF_OK;
  });
}

void kf_report_destroy(kf_report* r) { delete r; }

size_t kf_report_total(const kf_report* r) { return r == nullptr ? 0 : r->report.size(); }

size_t kf_report_passed(const kf_report* r) { return r == nullptr ? 0 : r->report.passed_count(); }

int kf_report_all_passed(const kf_report* r) { return r != nullptr && r->report.all_passed() ? 1 : 0; }

kf_status kf_report_render(const kf_report* r, const char* format, char** out) {
  if (r == nullptr || out == nullptr) return null_arg("argument");
  return guard([&] {
    auto cfg = r->cfg;
    if (format != nullptr) cfg.output_format = kfermion::parse_format(format);
    *out = dup_string(kfermion::render(cfg, r->report));
    return KF_OK;
  });
}

kf_status kf_emit_table(const char* kind, const char* config_json, char** out) {
  if (kind == nullptr || out == nullptr) return null_arg("argument");
  return guard([&] {
    const auto cfg = kfermion::config_from_json(config_json == nullptr ? "{}" : config_json);
    *out = dup_string(kfermion::emit_table(kfermion::parse_table_kind(kind), cfg));
    return KF_OK;
  });
}

kf_status kf_export_matrices(int k, double theta0, char** out) {
  if (out == nullptr) return null_arg("out");
  return guard([&] {
    *out = dup_string(kfermion::export_matrices(k, theta0));
    return KF_OK;
  });
}

kf_status kf_write_file(const char* path, const char* text) {
  if (path == nullptr || text == nullptr) return null_arg("argument");
  return guard([&] {
    kfermion::write_file(path, text);
    return KF_OK;
  });
}

kf_status kf_default_output_dir(char** out) {
  if (out == nullptr) return null_arg("out");
  return guard([&] {
    const auto d = kfermion::default_output_dir();
    *out = d ? dup_string(*d) : nullptr;
    return KF_OK;
  });
}

}  // extern "C"
