#include <stdio.h>

#include "kfermion/kfermion.h"

int main(void) {
  kf_report* r = NULL;
  char* text = NULL;
  if (kf_run_verify("{\"k_list\":[2,3],\"output_format\":\"text\"}", &r) != KF_OK) {
    fprintf(stderr, "verify: %s\n", kf_last_error());
    return 1;
  }
  if (kf_report_render(r, NULL, &text) != KF_OK) {
    fprintf(stderr, "render: %s\n", kf_last_error());
    kf_report_destroy(r);
    return 1;
  }
  fputs(text, stdout);
  kf_string_free(text);
  int ok = kf_report_all_passed(r);
  printf("%zu/%zu passed\n", kf_report_passed(r), kf_report_total(r));
  kf_report_destroy(r);
  return ok ? 0 : 1;
}
