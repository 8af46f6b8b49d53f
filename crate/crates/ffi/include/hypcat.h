#ifndef HYPCAT_H
#define HYPCAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HypcatStatus {
  HYPCAT_STATUS_OK = 0,
  HYPCAT_STATUS_DOMAIN = 1,
  HYPCAT_STATUS_QUADRATURE = 2,
  HYPCAT_STATUS_BRACKET = 3,
  HYPCAT_STATUS_DEGENERATE = 4,
  HYPCAT_STATUS_RESOLUTION = 5,
  HYPCAT_STATUS_IO = 6,
  HYPCAT_STATUS_NULL_POINTER = 7,
  HYPCAT_STATUS_INVALID_STRING = 8,
  HYPCAT_STATUS_PANIC = 9,
} HypcatStatus;

typedef enum HypcatModel {
  HYPCAT_MODEL_BALL = 0,
  HYPCAT_MODEL_UPPER_HALF = 1,
  HYPCAT_MODEL_HYPERBOLOID = 2,
} HypcatModel;

// Opaque surface mesh.
typedef struct HypcatMesh HypcatMesh;

typedef struct HypcatAreaComparison {
  double a;
  double y1;
  double x1;
  double band_area;
  double disks_area;
  bool band_smaller;
} HypcatAreaComparison;

typedef struct HypcatCatenoidClass {
  double a;
  // True for the index-one unstable class.
  bool unstable;
  bool least_area;
  // z is meaningful only when `has_z` is true.
  bool has_z;
  double z;
  double e;
} HypcatCatenoidClass;

typedef struct HypcatHelicoidClass {
  double pitch;
  // True for the unstable, infinite-index class.
  bool unstable;
  double threshold;
} HypcatHelicoidClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL. The pointer
// stays valid until the next hypcat call on the same thread.
const char *hypcat_last_error(void);

enum HypcatStatus hypcat_rho(double a, double t, double *out);

enum HypcatStatus hypcat_varrho(double a, double *out);

enum HypcatStatus hypcat_varrho_prime(double a, double *out);

enum HypcatStatus hypcat_varrho_second(double a, double *out);

// Catenary chart point (x(a,s), y(a,s)).
enum HypcatStatus hypcat_catenary_point(double a, double s, double *x, double *y);

enum HypcatStatus hypcat_zeta(double a, double s, double *out);

enum HypcatStatus hypcat_xi(double a, double s, double *out);

enum HypcatStatus hypcat_find_z(double a, double *out);

enum HypcatStatus hypcat_critical_a(double *out);

enum HypcatStatus hypcat_critical_pitch(double *out);

enum HypcatStatus hypcat_least_area_constant(double *out);

enum HypcatStatus hypcat_least_area_threshold(double *out);

enum HypcatStatus hypcat_compare_areas(double a, double y1, struct HypcatAreaComparison *out);

enum HypcatStatus hypcat_classify_catenoid(double a, struct HypcatCatenoidClass *out);

enum HypcatStatus hypcat_classify_helicoid(double pitch, struct HypcatHelicoidClass *out);

// Catenoid C_a over s in [-s_max, s_max] with n_s x n_theta vertices;
// `model` is a HypcatModel value.
enum HypcatStatus hypcat_catenoid_mesh(double a,
                                       int32_t model,
                                       double s_max,
                                       size_t n_s,
                                       size_t n_theta,
                                       struct HypcatMesh **out);

// Helicoid of pitch ā over [-u_max, u_max] x [-v_max, v_max]; `model` is
// a HypcatModel value.
enum HypcatStatus hypcat_helicoid_mesh(double pitch,
                                       int32_t model,
                                       double u_max,
                                       double v_max,
                                       size_t n_u,
                                       size_t n_v,
                                       struct HypcatMesh **out);

// # Safety
// `mesh` must be NULL or a live handle from this library.
size_t hypcat_mesh_vertex_count(const struct HypcatMesh *mesh);

// # Safety
// `mesh` must be NULL or a live handle from this library.
size_t hypcat_mesh_face_count(const struct HypcatMesh *mesh);

// Vertex coordinates, 3 per vertex; owned by the mesh.
//
// # Safety
// `mesh` must be NULL or a live handle from this library.
const double *hypcat_mesh_vertices(const struct HypcatMesh *mesh);

// Unit normals, 3 per vertex; owned by the mesh.
//
// # Safety
// `mesh` must be NULL or a live handle from this library.
const double *hypcat_mesh_normals(const struct HypcatMesh *mesh);

// Zero-based vertex indices, 3 per triangle; owned by the mesh.
//
// # Safety
// `mesh` must be NULL or a live handle from this library.
const uint64_t *hypcat_mesh_faces(const struct HypcatMesh *mesh);

// # Safety
// `mesh` must be a live handle; `path` a NUL-terminated string.
enum HypcatStatus hypcat_mesh_write_obj(const struct HypcatMesh *mesh, const char *path);

// # Safety
// `mesh` must be NULL or a handle from this library not yet freed.
void hypcat_mesh_free(struct HypcatMesh *mesh);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPCAT_H */
