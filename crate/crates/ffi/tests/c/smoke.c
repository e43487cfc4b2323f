#include <stdio.h>
#include <string.h>

#include "monodromy.h"

int main(void) {
    const int64_t rotation[4] = {0, -1, 1, 0};
    MdCertificate *cert = NULL;
    if (md_certify_matrix(rotation, 2, &cert) != MD_STATUS_OK) {
        fprintf(stderr, "certify: %s\n", md_last_error_message());
        return 1;
    }
    size_t genus = 0, k = 0, dim_m = 0, dim_w = 0;
    md_certificate_dims(cert, &genus, &k, &dim_m, &dim_w);
    char *json = NULL;
    md_certificate_to_json(cert, &json);
    int ok = 0;
    md_verify_json(json, &ok);
    md_string_free(json);
    md_certificate_free(cert);

    const int64_t twice[4] = {2, 0, 0, 1};
    MdStatus rejected = md_certify_matrix(twice, 2, &cert);
    const char *reason = md_last_error_message();

    printf("%zu %zu %zu %zu %d %d %s\n", genus, k, dim_m, dim_w, ok, (int)rejected,
           strstr(reason, "determinant") ? "reason-ok" : reason);
    return 0;
}
