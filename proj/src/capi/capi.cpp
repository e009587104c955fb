#include "grc.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/error.hpp"
#include "pipeline/pipeline.hpp"
#include "polysys/system.hpp"

using namespace grc;

struct grc_system {
  System instance;
};

struct grc_spec {
  Specialization instance;
};

namespace {

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int status_of(ErrCode c) {
  return 2 + static_cast<int>(c);
}

void set_err(char** err, const std::string& msg) {
  if (err) *err = dup(msg);
}

template <typename F>
int guarded(char** json, char** err, F&& body) {
  try {
    RunReport r = body();
    if (json) *json = dup(r.json);
    return r.ok ? GRC_OK : GRC_UNCERTIFIED;
  } catch (const Error& e) {
    set_err(err, std::string(err_code_name(e.code)) + ": " + e.what());
    return status_of(e.code);
  } catch (const std::exception& e) {
    set_err(err, std::string("Internal: ") + e.what());
    return GRC_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

grc_system* grc_system_parse(const char* text, char** err) {
  if (!text) {
    set_err(err, "Validation: null input");
    return nullptr;
  }
  try {
    auto* sys = new grc_system{parse_system(text)};
    return sys;
  } catch (const Error& e) {
    set_err(err, std::string(err_code_name(e.code)) + ": " + e.what());
    return nullptr;
  }
}

void grc_system_free(grc_system* sys) { delete sys; }

grc_spec* grc_spec_new(void) { return new grc_spec{}; }

int grc_spec_set(grc_spec* spec, const char* name, const char* value,
                 const char* weight, char** err) {
  if (!spec || !name || !value) {
    set_err(err, "Validation: null argument");
    return GRC_ERR_VALIDATION;
  }
  try {
    ValuedScalar vs;
    vs.value = rat_from_string(value);
    vs.weight = weight ? rat_from_string(weight) : Rat(0);
    spec->instance.assign[name] = vs;
    return GRC_OK;
  } catch (const Error& e) {
    set_err(err, std::string(err_code_name(e.code)) + ": " + e.what());
    return status_of(e.code);
  }
}

void grc_spec_free(grc_spec* spec) { delete spec; }

int grc_count(const grc_system* sys, const char* mode, uint64_t seed,
              const grc_spec* spec, int verify, char** json, char** err) {
  if (!sys || !mode) {
    set_err(err, "Validation: null argument");
    return GRC_ERR_VALIDATION;
  }
  return guarded(json, err, [&] {
    return run_count(sys->instance, mode, seed, spec ? &spec->instance : nullptr,
                     verify != 0);
  });
}

int grc_mv(const grc_system* sys, uint64_t seed, char** json, char** err) {
  if (!sys) {
    set_err(err, "Validation: null argument");
    return GRC_ERR_VALIDATION;
  }
  return guarded(json, err, [&] { return run_mv(sys->instance, seed); });
}

int grc_oracle(const grc_system* sys, uint64_t seed, const grc_spec* spec,
               const char* t_value, char** json, char** err) {
  if (!sys) {
    set_err(err, "Validation: null argument");
    return GRC_ERR_VALIDATION;
  }
  return guarded(json, err, [&] {
    std::optional<Rat> t;
    if (t_value) t = rat_from_string(t_value);
    return run_oracle(sys->instance, seed, spec ? &spec->instance : nullptr, t);
  });
}

int grc_prevariety(const grc_system* sys, const grc_spec* spec, uint64_t seed,
                   char** json, char** err) {
  if (!sys || !spec) {
    set_err(err, "Validation: a specialization is required");
    return GRC_ERR_VALIDATION;
  }
  return guarded(json, err,
                 [&] { return run_prevariety(sys->instance, spec->instance, seed); });
}

int grc_matroid(const grc_system* sys, uint64_t seed, char** json, char** err) {
  if (!sys) {
    set_err(err, "Validation: null argument");
    return GRC_ERR_VALIDATION;
  }
  return guarded(json, err, [&] { return run_matroid(sys->instance, seed); });
}

int grc_modify(const grc_system* sys, const char* mode, char** json, char** err) {
  if (!sys || !mode) {
    set_err(err, "Validation: null argument");
    return GRC_ERR_VALIDATION;
  }
  return guarded(json, err, [&] { return run_modify(sys->instance, mode); });
}

void grc_string_free(char* s) { std::free(s); }

const char* grc_version(void) { return "0.1.0"; }

}  // extern "C"
