import { ApiClient } from './api.js';
import { App } from './app.js';

const API_BASE = (window as { QNN_LENS_API?: string }).QNN_LENS_API ?? 'http://127.0.0.1:8000';

const root = document.getElementById('app');
if (!root) throw new Error('missing #app container');

const app = new App(root, new ApiClient(API_BASE));
void app.start();
