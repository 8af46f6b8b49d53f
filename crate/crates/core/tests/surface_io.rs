use hypcat::catenary::CatenoidParam;
use hypcat::surface::{catenoid_mesh_in, export_csv, export_obj, helicoid_mesh, Model};
use hypcat::HelicoidPitch;

#[test]
fn obj_round_trip_through_tobj() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = catenoid_mesh_in(CatenoidParam::new(0.6).unwrap(), Model::Hyperboloid, 2.0, 11, 10).unwrap();
    let path = dir.path().join("c.obj");
    export_obj(&mesh, &path).unwrap();
    let (models, _) = tobj::load_obj(&path, &tobj::LoadOptions::default()).unwrap();
    let m = &models[0].mesh;
    assert_eq!(m.positions.len(), 3 * mesh.vertices.len());
    assert_eq!(m.indices.len(), 3 * mesh.faces.len());
    assert_eq!(m.normals.len(), 3 * mesh.normals.len());
    // tobj may renumber vertices, so compare the corners face by face.
    for (f, idx) in mesh.faces.iter().zip(m.indices.chunks(3)) {
        for (&ours, &theirs) in f.iter().zip(idx) {
            let v = mesh.vertices[ours];
            let got = &m.positions[3 * theirs as usize..3 * theirs as usize + 3];
            for (&g, &want) in got.iter().zip(&v) {
                // tobj parses positions as f32.
                assert!((g as f64 - want).abs() <= 1e-6 * want.abs().max(1.0));
            }
        }
    }
}

#[test]
fn faces_oriented_with_normals() {
    for model in [Model::Ball, Model::UpperHalf, Model::Hyperboloid] {
        let mesh = helicoid_mesh(HelicoidPitch::new(1.5).unwrap(), model, 1.5, 1.5, 9, 9).unwrap();
        for f in &mesh.faces {
            let [a, b, c] = f.map(|i| mesh.vertices[i]);
            let e1 = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let e2 = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
            let n = [e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2], e1[0] * e2[1] - e1[1] * e2[0]];
            let vn = mesh.normals[f[0]];
            assert!(n[0] * vn[0] + n[1] * vn[1] + n[2] * vn[2] > 0.0, "{model:?}");
        }
    }
}

#[test]
fn csv_export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.csv");
    let rows = vec![vec![0.1, std::f64::consts::PI], vec![-2.5e-12, 1e300]];
    export_csv(&path, &["a", "b"], &rows).unwrap();
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let back: Vec<Vec<f64>> = rdr
        .records()
        .map(|r| r.unwrap().iter().map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(back, rows);
    assert!(export_csv(std::path::Path::new("/nonexistent-dir/x.csv"), &["a"], &[]).is_err());
}
