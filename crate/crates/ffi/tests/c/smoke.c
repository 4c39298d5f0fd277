#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "equivch.h"

#define CHECK(cond)                                                  \
    do {                                                             \
        if (!(cond)) {                                               \
            const char *why = equivch_last_error();                  \
            fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond,   \
                    why ? why : "no error message");                 \
            return 1;                                                \
        }                                                            \
    } while (0)

int main(void) {
    const char *doc = "{\"corners\":[[\"0\",\"10\"],[\"9/25\",\"31/4\"],[\"9/10\",\"1\"]],\"plateau\":\"1\"}";
    EquivchProfile *profile = NULL;
    CHECK(equivch_profile_from_json(doc, &profile) == EQUIVCH_STATUS_OK);

    char *orbits = NULL;
    CHECK(equivch_orbits_json(profile, "2/5", "1/8", &orbits) == EQUIVCH_STATUS_OK);
    CHECK(strstr(orbits, "356/3875") != NULL);
    equivch_string_free(orbits);

    EquivchHomology *h = NULL;
    CHECK(equivch_homology_compute(profile, 1, 7, "2/5", "1/8", -9, -1, true, &h) == EQUIVCH_STATUS_OK);
    for (int64_t m = -9; m <= -1; m++) {
        size_t dim = 99;
        CHECK(equivch_homology_dim(h, m, &dim) == EQUIVCH_STATUS_OK);
        CHECK(dim == (m >= -5 ? 1u : 0u));
    }
    equivch_homology_free(h);
    equivch_profile_free(profile);

    int64_t degree = 0;
    CHECK(equivch_predicted_degree(1, "2/5", &degree) == EQUIVCH_STATUS_OK);
    CHECK(degree == -5);
    CHECK(equivch_predicted_degree(1, "1/2", &degree) == EQUIVCH_STATUS_INVALID_INPUT);
    CHECK(equivch_last_error() != NULL);

    char *cert = NULL;
    CHECK(equivch_certify_json(1, "6/5", "21/20", 0, &cert) == EQUIVCH_STATUS_OK);
    CHECK(strstr(cert, "\"p\":-13") != NULL);
    equivch_string_free(cert);

    CHECK(equivch_profile_from_json(NULL, &profile) == EQUIVCH_STATUS_NULL_POINTER);
    printf("ok %s\n", equivch_version());
    return 0;
}
