/* Classifies the empty set on Q8 and runs the Dic(C6) census through the C ABI. */
#include <stdio.h>

#include "dicaut.h"

static int count_records(const char *record_json, void *user_data) {
  (void)record_json;
  ++*(unsigned *)user_data;
  return 0;
}

int main(void) {
  DicautGroup *q8 = NULL;
  if (dicaut_group_new("q8e:0", &q8) != DICAUT_STATUS_OK) {
    fprintf(stderr, "%s\n", dicaut_last_error());
    return 1;
  }
  DicautClassification c;
  if (dicaut_classify(q8, "00", false, &c) != DICAUT_STATUS_OK) {
    fprintf(stderr, "%s\n", dicaut_last_error());
    return 1;
  }
  printf("q8 empty: aut=%llu b=%llu proper=%d\n", (unsigned long long)c.aut_order,
         (unsigned long long)c.b_order, c.verdict == DICAUT_VERDICT_PROPER_SUPERGROUP);
  dicaut_group_free(q8);

  DicautGroup *g = NULL;
  DicautSummary s;
  unsigned records = 0;
  if (dicaut_group_new("dic:C6:y=3", &g) != DICAUT_STATUS_OK ||
      dicaut_census_exhaustive(g, false, 1, count_records, &records, &s) != DICAUT_STATUS_OK) {
    fprintf(stderr, "%s\n", dicaut_last_error());
    return 1;
  }
  printf("dic c6: total=%llu records=%u vacuous=%d satisfied=%d\n", (unsigned long long)s.total, records,
         s.vacuous, s.satisfied);
  dicaut_group_free(g);

  if (dicaut_group_new("dic:C5:y=1", &g) == DICAUT_STATUS_OK) {
    return 1;
  }
  printf("error: %s\n", dicaut_last_error());
  return 0;
}
