#include <stdio.h>
#include <string.h>

#include "treelike.h"

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);     \
      return 1;                                                      \
    }                                                                \
  } while (0)

int main(void) {
  TlEnumerator *e = NULL;
  CHECK(tl_enumerator_new(4, &e) == TL_STATUS_OK);
  size_t count = 0, corners = 0;
  TlTableau *t = NULL;
  while (tl_enumerator_next(e, &t) == TL_STATUS_OK) {
    TlStats s;
    CHECK(tl_tableau_stats(t, &s) == TL_STATUS_OK);
    corners += s.corners;
    count++;
    tl_tableau_free(t);
  }
  tl_enumerator_free(e);
  CHECK(count == 24);
  CHECK(corners == 32);

  TlTableau *fig = NULL;
  CHECK(tl_tableau_parse("SWSSWWWSW\no.o.o\noo.o\n..o.\no", &fig) == TL_STATUS_OK);
  TlPermTableau *p = NULL;
  CHECK(tl_phi(fig, &p) == TL_STATUS_OK);
  char *text = NULL;
  CHECK(tl_perm_tableau_to_text(p, &text) == TL_STATUS_OK);
  CHECK(strcmp(text, "SWSSWWWS\n0101\n111\n001\n") == 0);
  tl_string_free(text);
  tl_perm_tableau_free(p);
  tl_tableau_free(fig);

  CHECK(tl_tableau_parse("SWX", &fig) == TL_STATUS_PARSE);
  CHECK(tl_last_error() != NULL);
  printf("ok\n");
  return 0;
}
