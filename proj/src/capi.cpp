#include "qdp4/qdp4.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>

#include "qdp4/error.hpp"
#include "qdp4/io.hpp"
#include "qdp4/selftest.hpp"

struct qdp4_pencil {
  qdp4::QuadricPencil pencil;
};

namespace {

thread_local std::string last_error;

qdp4_status status_of(qdp4::ErrorCode c) {
  using qdp4::ErrorCode;
  switch (c) {
    case ErrorCode::Parse: return QDP4_PARSE;
    case ErrorCode::NotSmooth:
    case ErrorCode::DegeneratePencil: return QDP4_NOT_SMOOTH;
    case ErrorCode::UnsupportedField:
    case ErrorCode::UnsupportedSplitting:
    case ErrorCode::DescriptorMismatch: return QDP4_FIELD;
    case ErrorCode::ResourceLimit: return QDP4_RESOURCE;
    case ErrorCode::Internal: return QDP4_INTERNAL;
    default: return QDP4_INVALID;
  }
}

template <class F>
qdp4_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const qdp4::Error& e) {
    last_error = std::string(qdp4::to_string(e.code())) + ": " + e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("parse: ") + e.what();
    return QDP4_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "resource: out of memory";
    return QDP4_RESOURCE;
  } catch (const std::exception& e) {
    last_error = std::string("internal: ") + e.what();
    return QDP4_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qdp4_status emit(const qdp4::Json& j, char** out) {
  *out = dup(j.dump(2));
  return QDP4_OK;
}

void need(const void* p, const char* what) {
  if (!p) throw qdp4::Error(qdp4::ErrorCode::InvalidInput, std::string("null ") + what);
}

qdp4::Json parse(const char* text) {
  need(text, "input");
  return qdp4::Json::parse(text);
}

}  // namespace

extern "C" {

const char* qdp4_version(void) { return "0.1.0"; }

const char* qdp4_last_error(void) { return last_error.c_str(); }

void qdp4_string_free(char* s) { std::free(s); }

qdp4_status qdp4_pencil_from_json(const char* json, qdp4_pencil** out) {
  return guarded([&] {
    need(out, "output");
    *out = new qdp4_pencil{qdp4::pencil_from_json(parse(json))};
    return QDP4_OK;
  });
}

void qdp4_pencil_free(qdp4_pencil* p) { delete p; }

qdp4_status qdp4_pencil_to_json(const qdp4_pencil* p, char** out) {
  return guarded([&] {
    need(p, "pencil");
    need(out, "output");
    return emit(qdp4::pencil_to_json(p->pencil), out);
  });
}

qdp4_status qdp4_analyze(const qdp4_pencil* p, char** report) {
  return guarded([&] {
    need(p, "pencil");
    need(report, "output");
    return emit(qdp4::analyze_report(p->pencil), report);
  });
}

qdp4_status qdp4_isomorphic(const qdp4_pencil* a, const qdp4_pencil* b, char** report) {
  return guarded([&] {
    need(a, "pencil");
    need(b, "pencil");
    need(report, "output");
    const auto j = qdp4::iso_report(a->pencil, b->pencil);
    emit(j, report);
    return j["isomorphic"].get<bool>() ? QDP4_OK : QDP4_FALSE;
  });
}

qdp4_status qdp4_aut(const qdp4_pencil* p, char** report) {
  return guarded([&] {
    need(p, "pencil");
    need(report, "output");
    return emit(qdp4::aut_report(p->pencil), report);
  });
}

qdp4_status qdp4_minimal(const qdp4_pencil* p, char** report) {
  return guarded([&] {
    need(p, "pencil");
    need(report, "output");
    return emit(qdp4::minimal_report(p->pencil), report);
  });
}

qdp4_status qdp4_count_points(const qdp4_pencil* p, unsigned k, char** report) {
  return guarded([&] {
    need(p, "pencil");
    need(report, "output");
    return emit(qdp4::count_report(p->pencil, k), report);
  });
}

qdp4_status qdp4_reconstruct(const char* field_json, const char* lambda, const char* mu, qdp4_pencil** out) {
  return guarded([&] {
    need(lambda, "lambda");
    need(mu, "mu");
    need(out, "output");
    const auto f = field_json && *field_json ? qdp4::field_from_json(parse(field_json)) : qdp4::Field::rationals();
    qdp4::NormalForm nf{qdp4::Scalar::parse(f, lambda), qdp4::Scalar::parse(f, mu)};
    *out = new qdp4_pencil{qdp4::reconstruct(nf)};
    return QDP4_OK;
  });
}

qdp4_status qdp4_kgroups_ranks(const char* input_json, char** report) {
  return guarded([&] {
    need(report, "output");
    return emit(qdp4::kgroups_ranks_report(parse(input_json)), report);
  });
}

qdp4_status qdp4_groupoid_verify(const char* input_json, char** report) {
  return guarded([&] {
    need(report, "output");
    const auto j = qdp4::groupoid_verify_report(parse(input_json));
    emit(j, report);
    return j["heavily_separable"].get<bool>() ? QDP4_OK : QDP4_FALSE;
  });
}

qdp4_status qdp4_selftest(const char* suites, char** report) {
  return guarded([&] {
    need(report, "output");
    std::vector<std::string> names;
    if (suites) {
      std::stringstream ss(suites);
      for (std::string n; std::getline(ss, n, ',');)
        if (!n.empty()) names.push_back(n);
    }
    const auto results = qdp4::run_selftest(names);
    qdp4::Json j;
    bool all = true;
    j["suites"] = qdp4::Json::array();
    for (const auto& r : results) {
      all = all && r.passed;
      j["suites"].push_back({{"name", r.name},
                             {"passed", r.passed},
                             {"checks", r.checks},
                             {"failures", r.failures},
                             {"detail", r.detail},
                             {"seconds", r.seconds}});
    }
    j["passed"] = all;
    emit(j, report);
    return all ? QDP4_OK : QDP4_FALSE;
  });
}

}  // extern "C"
