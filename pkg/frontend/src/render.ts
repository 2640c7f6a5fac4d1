/**
 * three.js layer: turns render groups into scene objects, owns the camera
 * and picking.  All geometry math lives in view.ts; this file only uploads
 * buffers and forwards events.
 */

import {
  AmbientLight,
  BufferAttribute,
  BufferGeometry,
  Color,
  CylinderGeometry,
  DirectionalLight,
  DoubleSide,
  Group,
  InstancedMesh,
  Matrix4,
  Mesh,
  MeshLambertMaterial,
  Object3D,
  PerspectiveCamera,
  Quaternion,
  Raycaster,
  Scene,
  SphereGeometry,
  Vector2,
  Vector3,
  WebGLRenderer,
} from "three";
import { OrbitControls } from "three/addons/controls/OrbitControls.js";

import { SceneModel } from "./scene.js";
import { RenderGroup, triangleSoup } from "./view.js";

export interface ViewerOptions {
  /** Sphere radius for 0-cells, as a fraction of the model diagonal. */
  pointScale: number;
  /** Cylinder radius for 1-cells, as a fraction of the model diagonal. */
  segmentScale: number;
}

export const DEFAULT_OPTIONS: ViewerOptions = { pointScale: 0.008, segmentScale: 0.003 };

interface Pickable {
  object: Object3D;
  cellOf: (intersection: {
    instanceId?: number | null;
    faceIndex?: number | null;
  }) => number;
}

export class Viewer {
  private renderer: WebGLRenderer;
  private scene3 = new Scene();
  private camera: PerspectiveCamera;
  private controls: OrbitControls;
  private content = new Group();
  private pickables: Pickable[] = [];
  private raycaster = new Raycaster();
  private options: ViewerOptions;

  constructor(canvas: HTMLCanvasElement, options: Partial<ViewerOptions> = {}) {
    this.options = { ...DEFAULT_OPTIONS, ...options };
    this.renderer = new WebGLRenderer({ canvas, antialias: true });
    this.renderer.setPixelRatio(window.devicePixelRatio);
    this.camera = new PerspectiveCamera(50, 1, 0.01, 1000);
    this.camera.position.set(2, 2, 3);
    this.controls = new OrbitControls(this.camera, canvas);
    this.controls.enableDamping = true;
    this.scene3.background = new Color(0x10131a);
    this.scene3.add(new AmbientLight(0xffffff, 1.1));
    const sun = new DirectionalLight(0xffffff, 1.4);
    sun.position.set(3, 5, 4);
    this.scene3.add(sun);
    this.scene3.add(this.content);
    const animate = () => {
      requestAnimationFrame(animate);
      this.controls.update();
      this.resize();
      this.renderer.render(this.scene3, this.camera);
    };
    animate();
  }

  private resize(): void {
    const canvas = this.renderer.domElement;
    const w = canvas.clientWidth || canvas.width;
    const h = canvas.clientHeight || canvas.height;
    if (canvas.width !== w || canvas.height !== h) {
      this.renderer.setSize(w, h, false);
      this.camera.aspect = w / h;
      this.camera.updateProjectionMatrix();
    }
  }

  /** Fit the camera to the model once after loading. */
  frame(scene: SceneModel): void {
    const lo = new Vector3(Infinity, Infinity, Infinity);
    const hi = new Vector3(-Infinity, -Infinity, -Infinity);
    for (const [x, y, z] of scene.coordinates) {
      lo.min(new Vector3(x, y, z));
      hi.max(new Vector3(x, y, z));
    }
    const centre = lo.clone().add(hi).multiplyScalar(0.5);
    const diagonal = Math.max(hi.clone().sub(lo).length(), 1e-6);
    this.controls.target.copy(centre);
    this.camera.position.copy(centre.clone().add(new Vector3(0.7, 0.6, 1.1).multiplyScalar(diagonal)));
    this.camera.near = diagonal / 1000;
    this.camera.far = diagonal * 50;
    this.camera.updateProjectionMatrix();
    this.modelDiagonal = diagonal;
  }

  private modelDiagonal = 1;

  /** Replace the rendered content with the given groups. */
  show(groups: RenderGroup[]): void {
    this.content.clear();
    this.pickables = [];
    for (const group of groups) {
      if (group.dim === 0) this.addPoints(group);
      else if (group.dim === 1) this.addSegments(group);
      else this.addTriangles(group);
    }
  }

  private material(group: RenderGroup): MeshLambertMaterial {
    return new MeshLambertMaterial({
      transparent: group.opacity < 1,
      opacity: group.opacity,
      side: DoubleSide,
      depthWrite: group.opacity >= 0.99,
    });
  }

  private addPoints(group: RenderGroup): void {
    const radius = this.modelDiagonal * this.options.pointScale;
    const geometry = new SphereGeometry(radius, 12, 8);
    const mesh = new InstancedMesh(geometry, this.material(group), group.cellIds.length);
    const placement = new Matrix4();
    group.positions.forEach(([p], i) => {
      placement.makeTranslation(p[0], p[1], p[2]);
      mesh.setMatrixAt(i, placement);
      mesh.setColorAt(i, new Color(...group.colors[i]));
    });
    this.content.add(mesh);
    this.pickables.push({
      object: mesh,
      cellOf: (hit) => group.cellIds[hit.instanceId ?? 0],
    });
  }

  private addSegments(group: RenderGroup): void {
    const radius = this.modelDiagonal * this.options.segmentScale;
    const geometry = new CylinderGeometry(radius, radius, 1, 8, 1, true);
    const mesh = new InstancedMesh(geometry, this.material(group), group.cellIds.length);
    const up = new Vector3(0, 1, 0);
    group.positions.forEach(([a, b], i) => {
      const from = new Vector3(...a);
      const to = new Vector3(...b);
      const axis = to.clone().sub(from);
      const placement = new Matrix4().compose(
        from.clone().add(to).multiplyScalar(0.5),
        new Quaternion().setFromUnitVectors(up, axis.clone().normalize()),
        new Vector3(1, axis.length(), 1),
      );
      mesh.setMatrixAt(i, placement);
      mesh.setColorAt(i, new Color(...group.colors[i]));
    });
    this.content.add(mesh);
    this.pickables.push({
      object: mesh,
      cellOf: (hit) => group.cellIds[hit.instanceId ?? 0],
    });
  }

  private addTriangles(group: RenderGroup): void {
    const soup = triangleSoup(group);
    const geometry = new BufferGeometry();
    geometry.setAttribute("position", new BufferAttribute(soup.positions, 3));
    geometry.setAttribute("color", new BufferAttribute(soup.colors, 3));
    geometry.computeVertexNormals();
    const material = this.material(group);
    material.vertexColors = true;
    const mesh = new Mesh(geometry, material);
    this.content.add(mesh);
    this.pickables.push({
      object: mesh,
      cellOf: (hit) => soup.triangleCells[hit.faceIndex ?? 0],
    });
  }

  /** Cell id under the pointer, or null. */
  pick(clientX: number, clientY: number): number | null {
    const rect = this.renderer.domElement.getBoundingClientRect();
    const pointer = new Vector2(
      ((clientX - rect.left) / rect.width) * 2 - 1,
      (-(clientY - rect.top) / rect.height) * 2 + 1,
    );
    this.raycaster.setFromCamera(pointer, this.camera);
    for (const hit of this.raycaster.intersectObjects(
      this.pickables.map((p) => p.object),
    )) {
      const pickable = this.pickables.find((p) => p.object === hit.object);
      if (pickable) return pickable.cellOf(hit);
    }
    return null;
  }
}
